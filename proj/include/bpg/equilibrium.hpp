#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bpg/demand.hpp"
#include "bpg/rational.hpp"
#include "bpg/subset.hpp"
#include "bpg/valuation.hpp"

namespace bpg {

// Per-item relative valuation constraint report for a set S:
//   w_i > (sum_{j in S\{i}} w_j - B) / (|S| - 1)
// Weights are the additive item values, or item marginals v_N(i) in the
// general case. The singleton convention is w_i > 0.
struct ConstraintReport {
  ItemSet set = 0;
  std::vector<int> items;                    // ascending members of S
  std::vector<Rational> weights;             // aligned with items
  std::vector<Rational> per_item_threshold;  // aligned; 0 for singletons
  std::vector<bool> holds_per_item;
  bool holds = false;
};

inline ConstraintReport check_constraint(const Game& game, ItemSet s,
                                         const std::vector<Rational>& weights) {
  if (s == 0) throw std::invalid_argument("constraint set must be nonempty");
  if (!is_subset(s, full_set(game.n()))) throw std::invalid_argument("set out of range");
  if (static_cast<int>(weights.size()) != game.n()) {
    throw std::invalid_argument("weights length must equal item count");
  }
  ConstraintReport report;
  report.set = s;
  report.items = set_items(s);
  Rational total = 0;
  for (int i : report.items) total += weights[i];
  int size = static_cast<int>(report.items.size());
  report.holds = true;
  for (int i : report.items) {
    report.weights.push_back(weights[i]);
    Rational threshold = 0;
    bool item_holds;
    if (size == 1) {
      item_holds = weights[i] > 0;
    } else {
      threshold = (total - weights[i] - game.budget) / (size - 1);
      item_holds = weights[i] > threshold;
    }
    report.per_item_threshold.push_back(threshold);
    report.holds_per_item.push_back(item_holds);
    report.holds = report.holds && item_holds;
  }
  return report;
}

/// Equal-utility prices on S:
///   p_i = (B + (|S|-1) w_i - sum_{j in S\{i}} w_j) / |S|,   p = 0 off S.
/// Requires the relative valuation constraint on S and sum_S w > B; then
/// sum_S p = B, every p_i > 0 and every surplus w_i - p_i is identical.
inline PriceVector equal_utility_prices(const Game& game, ItemSet s,
                                        const std::vector<Rational>& weights) {
  ConstraintReport constraint = check_constraint(game, s, weights);
  if (!constraint.holds) {
    for (std::size_t k = 0; k < constraint.items.size(); ++k) {
      if (!constraint.holds_per_item[k]) {
        throw std::invalid_argument(
            "relative valuation constraint fails at item " + std::to_string(constraint.items[k]) +
            " (weight " + format_rational(constraint.weights[k]) + " <= threshold " +
            format_rational(constraint.per_item_threshold[k]) + ")");
      }
    }
  }
  Rational total = 0;
  for (int i : set_items(s)) total += weights[i];
  if (total <= game.budget) {
    throw std::invalid_argument("equal-utility prices need total weight above the budget (got " +
                                format_rational(total) + " <= B = " +
                                format_rational(game.budget) + ")");
  }
  int size = set_size(s);
  PriceVector prices(game.n(), Rational(0));
  for (int i : set_items(s)) {
    prices[i] = (game.budget + size * weights[i] - total) / size;
  }
  return prices;
}

// Greedy base set over an additive valuation: items in non-increasing value
// order, extended while the next item's value strictly exceeds
// (sum_L v - B)/|L|.
struct BaseSet {
  ItemSet items = 0;
  std::vector<int> order;  // the full non-increasing ordering used
  // First rejected item and the threshold it failed, when the greedy stops
  // before exhausting the items.
  std::optional<std::pair<int, Rational>> stop_witness;
};

inline BaseSet base_set(const Game& game) {
  const auto* additive = std::get_if<AdditiveValuation>(&game.valuation.kind);
  if (additive == nullptr) {
    throw std::invalid_argument("base set is defined for additive valuations only");
  }
  const auto& values = additive->values;
  Rational total = std::accumulate(values.begin(), values.end(), Rational(0));
  if (total <= game.budget) {
    throw std::invalid_argument("base set needs v(N) > B");
  }
  BaseSet result;
  result.order.resize(game.n());
  std::iota(result.order.begin(), result.order.end(), 0);
  std::stable_sort(result.order.begin(), result.order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  Rational picked_total = 0;
  int picked = 0;
  for (int item : result.order) {
    if (picked > 0) {
      Rational threshold = (picked_total - game.budget) / picked;
      if (values[item] <= threshold) {
        result.stop_witness = {item, threshold};
        break;
      }
    }
    result.items = with_item(result.items, item);
    picked_total += values[item];
    ++picked;
  }
  return result;
}

/// The unbudgeted benchmark prices p_i = v(N) - v(N \ {i}).
inline PriceVector bnl_prices(const Game& game) { return item_marginals(game.valuation); }

/// Every item bought and every price strictly positive.
inline bool is_market_clearing(const Game& game, const PriceVector& prices) {
  check_prices(game, prices);
  for (const auto& p : prices) {
    if (p <= 0) return false;
  }
  return demand(game, prices).chosen == full_set(game.n());
}

}  // namespace bpg
