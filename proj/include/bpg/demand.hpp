#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bpg/rational.hpp"
#include "bpg/subset.hpp"
#include "bpg/valuation.hpp"

namespace bpg {

using PriceVector = std::vector<Rational>;

inline void check_prices(const Game& game, const PriceVector& prices) {
  if (static_cast<int>(prices.size()) != game.n()) {
    throw std::invalid_argument("price vector length must equal item count");
  }
  for (const auto& p : prices) {
    if (p < 0) throw std::invalid_argument("prices must be nonnegative");
  }
}

struct DemandOutcome {
  ItemSet chosen = 0;             // X(v,p), maximal tie-break
  Rational cost = 0;              // p(X)
  Rational buyer_utility = 0;     // v(X) - p(X)
  ItemSet positively_priced = 0;  // X without zero-priced items
  std::uint64_t num_optima = 0;           // feasible utility maximizers
  std::uint64_t num_max_size_optima = 0;  // those of maximum cardinality
};

/// All 2^n set values, indexed by bitmask.
inline std::vector<Rational> value_table(const Valuation& v) {
  std::vector<Rational> values(std::size_t{1} << v.n);
  for (ItemSet s = 0; s < values.size(); ++s) values[s] = v.value(s);
  return values;
}

/// All 2^n subset costs p(S), built incrementally.
inline std::vector<Rational> cost_table(int n, const PriceVector& prices) {
  std::vector<Rational> costs(std::size_t{1} << n);
  for (ItemSet s = 1; s < costs.size(); ++s) {
    int low = std::countr_zero(s);
    costs[s] = costs[without_item(s, low)] + prices[low];
  }
  return costs;
}

/// u_b(S, p): v(S) - p(S) when affordable, empty otherwise (the -infinity
/// case of the budgeted quasi-linear utility).
inline std::optional<Rational> buyer_utility(const Game& game, ItemSet s,
                                             const PriceVector& prices) {
  check_prices(game, prices);
  if (!is_subset(s, full_set(game.n()))) throw std::invalid_argument("set out of range");
  Rational cost = 0;
  for (int i : set_items(s)) cost += prices[i];
  if (cost > game.budget) return std::nullopt;
  return game.valuation.value(s) - cost;
}

namespace detail {

// Core scan shared by demand() and the per-vendor deviation sweep: picks,
// among feasible utility maximizers, the largest set, breaking remaining
// ties toward the numerically smallest bitmask. CostFn maps a mask to p(S).
template <class CostFn>
DemandOutcome demand_scan(const std::vector<Rational>& values, CostFn&& cost_of,
                          const Rational& budget, const PriceVector& prices) {
  DemandOutcome best;
  best.chosen = 0;
  best.buyer_utility = 0;  // empty set is always feasible
  best.num_optima = 1;
  best.num_max_size_optima = 1;
  int best_size = 0;
  for (ItemSet s = 1; s < values.size(); ++s) {
    Rational cost = cost_of(s);
    if (cost > budget) continue;
    Rational utility = values[s] - cost;
    if (utility < best.buyer_utility) continue;
    if (utility > best.buyer_utility) {
      best.chosen = s;
      best.buyer_utility = utility;
      best.num_optima = 1;
      best.num_max_size_optima = 1;
      best_size = set_size(s);
      continue;
    }
    ++best.num_optima;
    int size = set_size(s);
    if (size > best_size) {
      best.chosen = s;
      best_size = size;
      best.num_max_size_optima = 1;
    } else if (size == best_size) {
      ++best.num_max_size_optima;
      // equal utility and size: the earlier (smaller) mask wins
    }
  }
  best.cost = cost_of(best.chosen);
  best.positively_priced = best.chosen;
  for (int i = 0; i < static_cast<int>(prices.size()); ++i) {
    if (prices[i] == 0) best.positively_priced = without_item(best.positively_priced, i);
  }
  return best;
}

}  // namespace detail

/// The buyer's choice X(v,p): exhaustive scan of all subsets within budget.
inline DemandOutcome demand(const Game& game, const PriceVector& prices) {
  check_prices(game, prices);
  std::vector<Rational> values = value_table(game.valuation);
  std::vector<Rational> costs = cost_table(game.n(), prices);
  return detail::demand_scan(values, [&](ItemSet s) -> const Rational& { return costs[s]; },
                             game.budget, prices);
}

/// u_i(p): the vendor's price if sold, 0 otherwise.
inline std::vector<Rational> vendor_utilities(const DemandOutcome& outcome,
                                              const PriceVector& prices) {
  std::vector<Rational> out(prices.size(), Rational(0));
  for (int i = 0; i < static_cast<int>(prices.size()); ++i) {
    if (contains(outcome.chosen, i)) out[i] = prices[i];
  }
  return out;
}

}  // namespace bpg
