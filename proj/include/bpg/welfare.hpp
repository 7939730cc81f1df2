#pragma once

#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "bpg/demand.hpp"
#include "bpg/equilibrium.hpp"
#include "bpg/rational.hpp"
#include "bpg/subset.hpp"
#include "bpg/valuation.hpp"
#include "bpg/verifier.hpp"

namespace bpg {

// Social welfare counts only items the buyer pays for: zero-priced items
// stay in the consumed set but are excluded from the welfare value.
struct WelfareReport {
  Rational welfare = 0;  // v(X+)
  ItemSet chosen = 0;
  ItemSet excluded_free_items = 0;
  bool market_clearing = false;
};

inline WelfareReport social_welfare(const Game& game, const PriceVector& prices) {
  DemandOutcome outcome = demand(game, prices);
  WelfareReport report;
  report.chosen = outcome.chosen;
  report.excluded_free_items = outcome.chosen & ~outcome.positively_priced;
  report.welfare = game.valuation.value(outcome.positively_priced);
  report.market_clearing = is_market_clearing(game, prices);
  return report;
}

// Best-over-worst equilibrium welfare across a verified candidate set.
struct RatioReport {
  std::vector<std::pair<PriceVector, Rational>> equilibria;  // verified, with welfare
  Rational best = 0;
  Rational worst = 0;
  Rational ratio = 0;
};

inline RatioReport equilibrium_ratio(const Game& game, const std::vector<PriceVector>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidate price vectors");
  RatioReport report;
  for (const auto& prices : candidates) {
    if (!verify_pne(game, prices).is_pne) continue;
    report.equilibria.emplace_back(prices, social_welfare(game, prices).welfare);
  }
  if (report.equilibria.empty()) {
    throw std::runtime_error("no verified equilibrium among candidates");
  }
  report.best = report.worst = report.equilibria.front().second;
  for (const auto& [prices, welfare] : report.equilibria) {
    if (welfare > report.best) report.best = welfare;
    if (welfare < report.worst) report.worst = welfare;
  }
  if (report.worst == 0) throw std::runtime_error("worst equilibrium welfare is zero");
  report.ratio = report.best / report.worst;
  return report;
}

// Additive family with a large gap between its worst and best equilibrium:
// values (scale, scale-1 repeated n-3, 0.55, 0.55), budget 1. The worst
// equilibrium hands the whole budget to item 0; the best sells everything
// but the two tail items. Verified as exact PNE only from n = 9 up, hence
// the floor on n.
struct PoaFamily {
  Game game;
  PriceVector worst;
  PriceVector best;
};

inline PoaFamily poa_family(int n, Integer scale = 2) {
  if (n < 9) throw std::invalid_argument("poa family requires n >= 9");
  if (n > kMaxItems) throw std::invalid_argument("poa family n over the item cap");
  if (scale < 2) throw std::invalid_argument("poa family scale must be at least 2");
  std::vector<Rational> values(n, Rational(scale - 1));
  values[0] = Rational(scale);
  values[n - 2] = values[n - 1] = Rational(11, 20);
  PoaFamily family;
  family.game = make_game(make_additive(std::move(values)), Rational(1));
  family.worst.assign(n, Rational(0));
  family.worst[0] = 1;
  family.best.assign(n, Rational(1, 2 * (n - 3)));
  family.best[0] = Rational(1, 2);
  family.best[n - 2] = family.best[n - 1] = Rational(1, 4);
  return family;
}

}  // namespace bpg
