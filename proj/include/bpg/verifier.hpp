#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "bpg/demand.hpp"
#include "bpg/rational.hpp"
#include "bpg/subset.hpp"
#include "bpg/valuation.hpp"

namespace bpg {

// A vendor's one-dimensional deviation space is continuous, but the demand
// outcome as a function of p_i only changes at finitely many prices: budget
// boundaries B - p(S \ {i}) for S containing i, and indifference points
// between a set containing i and a set without it. Sweeping breakpoints plus
// one interior sample per open interval covers the whole space exactly.
struct CriticalPriceSet {
  int vendor = 0;
  std::vector<Rational> breakpoints;  // sorted, distinct, all >= 0
};

struct DeviationWitness {
  Rational price;
  DemandOutcome outcome;
  Rational gain;
};

struct VendorAnalysis {
  int vendor = 0;
  Rational current_utility = 0;
  Rational sup_deviation_utility = 0;
  // False when the supremum sits at the open end of an interval where the
  // vendor is sold; such suprema are not deviations.
  bool sup_attained = true;
  std::optional<DeviationWitness> witness;
};

struct VerifyReport {
  bool is_pne = false;
  std::vector<VendorAnalysis> vendors;
};

namespace detail {

struct DeviationContext {
  const Game& game;
  int vendor;
  std::vector<Rational> values;     // v(S) per mask
  std::vector<Rational> cost_rest;  // p(S \ {vendor}) per mask
  PriceVector prices;               // working copy, prices[vendor] mutable

  DeviationContext(const Game& game_in, const PriceVector& prices_in, int vendor_in)
      : game(game_in), vendor(vendor_in), values(value_table(game_in.valuation)),
        prices(prices_in) {
    PriceVector rest = prices_in;
    rest[vendor] = 0;
    cost_rest = cost_table(game.n(), rest);
  }

  DemandOutcome demand_at(const Rational& vendor_price) {
    prices[vendor] = vendor_price;
    ItemSet bit = ItemSet{1} << vendor;
    return demand_scan(
        values,
        [&](ItemSet s) {
          return (s & bit) ? cost_rest[s] + vendor_price : cost_rest[s];
        },
        game.budget, prices);
  }
};

}  // namespace detail

inline CriticalPriceSet critical_prices(const Game& game, const PriceVector& prices,
                                        int vendor) {
  check_prices(game, prices);
  detail::DeviationContext ctx(game, prices, vendor);
  std::set<Rational> points;
  points.insert(Rational(0));
  points.insert(prices[vendor]);

  // Net utility of sets without the vendor, and of sets with the vendor at
  // price 0; dedupe before crossing, the distinct counts are usually small.
  std::set<Rational> with_vendor, without_vendor;
  ItemSet bit = ItemSet{1} << vendor;
  ItemSet all = full_set(game.n());
  for (ItemSet rest = 0;; rest = ((rest | bit) + 1) & ~bit) {
    ItemSet s = rest | bit;
    Rational boundary = game.budget - ctx.cost_rest[s];
    if (boundary >= 0) points.insert(boundary);
    with_vendor.insert(ctx.values[s] - ctx.cost_rest[s]);
    if (ctx.cost_rest[rest] <= game.budget) {
      without_vendor.insert(ctx.values[rest] - ctx.cost_rest[rest]);
    }
    if (rest == (all & ~bit)) break;
  }
  // Indifference: v(S) - p(S\{i}) - p_i = v(T) - p(T) for S containing i,
  // T not.
  for (const auto& a : with_vendor) {
    for (const auto& b : without_vendor) {
      if (a >= b) points.insert(a - b);
    }
  }
  CriticalPriceSet result;
  result.vendor = vendor;
  result.breakpoints.assign(points.begin(), points.end());
  return result;
}

inline VendorAnalysis best_response(const Game& game, const PriceVector& prices, int vendor) {
  check_prices(game, prices);
  detail::DeviationContext ctx(game, prices, vendor);

  VendorAnalysis analysis;
  analysis.vendor = vendor;
  DemandOutcome current = ctx.demand_at(prices[vendor]);
  analysis.current_utility = contains(current.chosen, vendor) ? prices[vendor] : Rational(0);

  CriticalPriceSet critical = critical_prices(game, prices, vendor);
  const auto& bp = critical.breakpoints;

  // Utility 0 is always attainable (price above every budget boundary).
  analysis.sup_deviation_utility = 0;
  analysis.sup_attained = true;
  std::optional<Rational> best_witness_price;

  auto consider_witness = [&](const Rational& price) {
    if (!best_witness_price || price > *best_witness_price) best_witness_price = price;
  };

  for (std::size_t k = 0; k < bp.size(); ++k) {
    DemandOutcome at = ctx.demand_at(bp[k]);
    bool sold = contains(at.chosen, vendor);
    if (sold) {
      if (bp[k] > analysis.sup_deviation_utility) {
        analysis.sup_deviation_utility = bp[k];
        analysis.sup_attained = true;
      } else if (bp[k] == analysis.sup_deviation_utility) {
        // an open-interval supremum can also be hit exactly at a breakpoint
        analysis.sup_attained = true;
      }
      if (bp[k] > analysis.current_utility) consider_witness(bp[k]);
    }
    if (k + 1 == bp.size()) break;
    // Open interval (bp[k], bp[k+1]): demand membership is constant, one
    // midpoint sample decides it. Where sold, the utility sweeps the whole
    // interval, so the supremum is the right endpoint (unattained) and any
    // interior price above the current utility is a valid deviation.
    const Rational& lo = bp[k];
    const Rational& hi = bp[k + 1];
    Rational mid = (lo + hi) / 2;
    DemandOutcome at_mid = ctx.demand_at(mid);
    if (contains(at_mid.chosen, vendor)) {
      if (hi > analysis.sup_deviation_utility) {
        analysis.sup_deviation_utility = hi;
        analysis.sup_attained = false;
      }
      if (hi > analysis.current_utility) {
        Rational floor = std::max(lo, analysis.current_utility);
        consider_witness((floor + hi) / 2);
      }
    }
  }
  // Beyond the last breakpoint every set containing the vendor is over
  // budget (B itself is always a boundary), so nothing more to scan.

  if (best_witness_price) {
    DeviationWitness witness;
    witness.price = *best_witness_price;
    witness.outcome = ctx.demand_at(witness.price);
    witness.gain = witness.price - analysis.current_utility;
    analysis.witness = witness;
  }
  return analysis;
}

/// Exact PNE decision: no vendor may have an attainable deviation utility
/// strictly above its current utility. Unattained suprema are diagnostic
/// only.
inline VerifyReport verify_pne(const Game& game, const PriceVector& prices) {
  check_prices(game, prices);
  VerifyReport report;
  report.is_pne = true;
  for (int i = 0; i < game.n(); ++i) {
    report.vendors.push_back(best_response(game, prices, i));
    if (report.vendors.back().witness) report.is_pne = false;
  }
  return report;
}

}  // namespace bpg
