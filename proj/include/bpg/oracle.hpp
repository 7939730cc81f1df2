#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpg/demand.hpp"
#include "bpg/equilibrium.hpp"
#include "bpg/rational.hpp"
#include "bpg/subset.hpp"
#include "bpg/valuation.hpp"
#include "bpg/verifier.hpp"

namespace bpg {

/// Reference demand: same contract as demand(), implemented as a plain
/// unpruned loop that recomputes every value and cost from scratch. Kept
/// independent of the production scan for differential testing.
inline DemandOutcome oracle_demand(const Game& game, const PriceVector& prices) {
  check_prices(game, prices);
  ItemSet all = full_set(game.n());
  DemandOutcome best;
  bool have_best = false;
  for (ItemSet s = 0; s <= all; ++s) {
    Rational cost = 0;
    for (int i = 0; i < game.n(); ++i) {
      if (contains(s, i)) cost += prices[i];
    }
    if (cost > game.budget) continue;
    Rational utility = game.valuation.value(s) - cost;
    if (!have_best || utility > best.buyer_utility) {
      best.chosen = s;
      best.cost = cost;
      best.buyer_utility = utility;
      best.num_optima = 1;
      best.num_max_size_optima = 1;
      have_best = true;
    } else if (utility == best.buyer_utility) {
      ++best.num_optima;
      if (set_size(s) > set_size(best.chosen)) {
        best.chosen = s;
        best.cost = cost;
        best.num_max_size_optima = 1;
      } else if (set_size(s) == set_size(best.chosen)) {
        ++best.num_max_size_optima;
      }
    }
  }
  best.positively_priced = best.chosen;
  for (int i = 0; i < game.n(); ++i) {
    if (prices[i] == 0) best.positively_priced = without_item(best.positively_priced, i);
  }
  return best;
}

struct GridSpec {
  Rational step = Rational(1, 8);
  Rational epsilon = 0;  // on-grid improvement tolerance
  std::uint64_t max_evals = 10'000'000;
};

struct GridSurvivor {
  PriceVector prices;
  DemandOutcome outcome;
  bool exact_pne = false;
};

/// Enumerates every on-grid price vector (coordinates in {0, step, ...,
/// ceil(B/step)*step}) with no on-grid unilateral deviation improving a
/// vendor's utility by more than epsilon, then passes each survivor through
/// the exact verifier. Survivors come out in lexicographic order.
inline std::vector<GridSurvivor> grid_enumerate(const Game& game, const GridSpec& grid) {
  if (grid.step <= 0) throw std::invalid_argument("grid step must be positive");
  const int n = game.n();
  // points: 0, step, ..., first multiple >= B
  std::vector<Rational> levels;
  for (Rational x = 0;; x += grid.step) {
    levels.push_back(x);
    if (x >= game.budget) break;
  }
  const std::uint64_t num_levels = levels.size();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > grid.max_evals / num_levels) {
      throw std::runtime_error("grid evaluation budget exceeded");
    }
    total *= num_levels;
  }

  std::vector<Rational> values = value_table(game.valuation);

  // Demand outcome for every grid vector, indexed mixed-radix with axis 0
  // as the most significant digit so output order is lexicographic.
  std::vector<ItemSet> chosen(total);
  std::vector<std::uint32_t> level_index(n, 0);
  PriceVector prices(n, Rational(0));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Rational> costs = cost_table(n, prices);
    chosen[idx] = detail::demand_scan(
                      values, [&](ItemSet s) -> const Rational& { return costs[s]; },
                      game.budget, prices)
                      .chosen;
    // odometer increment, least significant axis is n-1
    for (int axis = n - 1; axis >= 0; --axis) {
      if (++level_index[axis] < num_levels) {
        prices[axis] = levels[level_index[axis]];
        break;
      }
      level_index[axis] = 0;
      prices[axis] = levels[0];
    }
  }

  std::uint64_t stride_last = 1;  // stride of axis i is num_levels^(n-1-i)
  std::vector<std::uint64_t> stride(n);
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = stride_last;
    stride_last *= num_levels;
  }

  std::vector<GridSurvivor> survivors;
  level_index.assign(n, 0);
  std::fill(prices.begin(), prices.end(), Rational(0));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      Rational current = contains(chosen[idx], i) ? levels[level_index[i]] : Rational(0);
      std::uint64_t base = idx - level_index[i] * stride[i];
      for (std::uint64_t alt = 0; alt < num_levels; ++alt) {
        if (alt == level_index[i]) continue;
        if (!contains(chosen[base + alt * stride[i]], i)) continue;
        if (levels[alt] > current + grid.epsilon) {
          stable = false;
          break;
        }
      }
    }
    if (stable) {
      GridSurvivor survivor;
      survivor.prices = prices;
      survivor.outcome = demand(game, prices);
      survivor.exact_pne = verify_pne(game, prices).is_pne;
      survivors.push_back(std::move(survivor));
    }
    for (int axis = n - 1; axis >= 0; --axis) {
      if (++level_index[axis] < num_levels) {
        prices[axis] = levels[level_index[axis]];
        break;
      }
      level_index[axis] = 0;
      prices[axis] = levels[0];
    }
  }
  return survivors;
}

enum class ValuationClass { kAdditive, kSubmodularCoverage, kXos };
enum class BudgetRule { kBelowTotal, kConstraintHolds, kConstraintFails };

struct GeneratorSpec {
  int n = 3;
  ValuationClass valuation_class = ValuationClass::kAdditive;
  BudgetRule budget_rule = BudgetRule::kBelowTotal;
  std::uint64_t seed = 0;
  int max_attempts = 10'000;
};

namespace detail {

// mt19937_64 output is portable; distributions are not, so draws are done
// by modulus.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

// uniform over {lo/100, ..., hi/100}
inline Rational rand_cents(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return Rational(lo + rand_below(rng, hi - lo + 1), 100);
}

}  // namespace detail

/// Deterministic seeded game generator. Coverage games materialize a
/// weighted-coverage function (monotone submodular by construction) into a
/// table; every item covers a private universe element, so all item
/// marginals are positive. Budget rules rejection-sample until the relative
/// valuation constraint on N (with the class's natural weights) holds or
/// fails as requested, always with total weight above the budget.
inline Game generate(const GeneratorSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxItems) throw std::invalid_argument("generator n out of range");
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Valuation valuation;
    switch (spec.valuation_class) {
      case ValuationClass::kAdditive: {
        std::vector<Rational> values;
        for (int i = 0; i < spec.n; ++i) values.push_back(detail::rand_cents(rng, 1, 400));
        valuation = make_additive(std::move(values));
        break;
      }
      case ValuationClass::kSubmodularCoverage: {
        const int universe = 2 * spec.n;
        std::vector<Rational> weights;
        for (int e = 0; e < universe; ++e) weights.push_back(detail::rand_cents(rng, 1, 100));
        // item i always covers private element i, plus random shared ones
        std::vector<std::uint32_t> covers(spec.n);
        for (int i = 0; i < spec.n; ++i) {
          covers[i] = (1u << i) |
                      static_cast<std::uint32_t>(detail::rand_below(rng, 1u << spec.n) << spec.n);
        }
        std::vector<Rational> table(std::size_t{1} << spec.n);
        for (ItemSet s = 1; s < table.size(); ++s) {
          std::uint32_t covered = 0;
          for (int i : set_items(s)) covered |= covers[i];
          Rational total = 0;
          for (int e = 0; e < universe; ++e) {
            if ((covered >> e) & 1u) total += weights[e];
          }
          table[s] = total;
        }
        valuation = make_table(spec.n, std::move(table), TableClass::kSubmodular);
        break;
      }
      case ValuationClass::kXos: {
        const int num_clauses = 2 + static_cast<int>(detail::rand_below(rng, 3));
        std::vector<std::vector<Rational>> clauses(num_clauses);
        for (auto& clause : clauses) {
          for (int i = 0; i < spec.n; ++i) clause.push_back(detail::rand_cents(rng, 0, 300));
        }
        valuation = make_xos(spec.n, std::move(clauses));
        break;
      }
    }

    std::vector<Rational> weights = item_marginals(valuation);
    Rational total_weight = 0;
    Rational min_weight = weights[0];
    for (const auto& w : weights) {
      total_weight += w;
      if (w < min_weight) min_weight = w;
    }
    if (min_weight <= 0 && spec.budget_rule != BudgetRule::kBelowTotal) {
      continue;  // constraint windows need positive weights
    }

    // The constraint on N holds iff B > sum(w) - n * min(w).
    Rational cutoff = total_weight - spec.n * min_weight;
    if (cutoff < 0) cutoff = 0;
    Rational lo, hi;
    switch (spec.budget_rule) {
      case BudgetRule::kBelowTotal:
        lo = 0;
        hi = valuation.value(full_set(spec.n));
        break;
      case BudgetRule::kConstraintHolds:
        lo = cutoff;
        hi = total_weight;
        break;
      case BudgetRule::kConstraintFails:
        lo = 0;
        hi = cutoff;
        break;
    }
    if (lo >= hi) continue;
    // strictly interior point of (lo, hi)
    Rational budget = lo + (hi - lo) * Rational(1 + detail::rand_below(rng, 99), 100);
    Game game = make_game(std::move(valuation), std::move(budget));
    ConstraintReport constraint = check_constraint(game, full_set(spec.n), weights);
    bool want_holds = spec.budget_rule == BudgetRule::kConstraintHolds;
    bool want_fails = spec.budget_rule == BudgetRule::kConstraintFails;
    if ((want_holds && !constraint.holds) || (want_fails && constraint.holds)) continue;
    return game;
  }
  throw std::runtime_error("generator rejection-sampling attempt limit exceeded");
}

}  // namespace bpg
