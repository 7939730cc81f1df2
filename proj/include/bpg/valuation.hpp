#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "bpg/rational.hpp"
#include "bpg/subset.hpp"

namespace bpg {

// v(S) = sum of per-item values over S.
struct AdditiveValuation {
  std::vector<Rational> values;
};

// v(S) = min(cap, additive sum).
struct BudgetAdditiveValuation {
  Rational cap;
  std::vector<Rational> values;
};

enum class TableClass { kSubmodular, kGeneralMonotone };

// Explicit table of all 2^n set values, indexed by subset bitmask.
// The declared class is validated, never assumed.
struct TableValuation {
  TableClass declared = TableClass::kGeneralMonotone;
  std::vector<Rational> values;  // size 2^n
};

// v(S) = max over additive clauses of the clause sum on S.
struct XosValuation {
  std::vector<std::vector<Rational>> clauses;
};

struct Valuation {
  int n = 0;
  std::variant<AdditiveValuation, BudgetAdditiveValuation, TableValuation, XosValuation> kind;

  Rational value(ItemSet s) const {
    return std::visit(
        [&](const auto& k) -> Rational {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, AdditiveValuation>) {
            Rational sum = 0;
            for (int i : set_items(s)) sum += k.values[i];
            return sum;
          } else if constexpr (std::is_same_v<T, BudgetAdditiveValuation>) {
            Rational sum = 0;
            for (int i : set_items(s)) sum += k.values[i];
            return sum < k.cap ? sum : k.cap;
          } else if constexpr (std::is_same_v<T, TableValuation>) {
            return k.values[s];
          } else {
            Rational best = 0;
            for (const auto& clause : k.clauses) {
              Rational sum = 0;
              for (int i : set_items(s)) sum += clause[i];
              if (sum > best) best = sum;
            }
            return best;
          }
        },
        kind);
  }
};

inline Valuation make_additive(std::vector<Rational> values) {
  Valuation v;
  v.n = static_cast<int>(values.size());
  v.kind = AdditiveValuation{std::move(values)};
  return v;
}

inline Valuation make_budget_additive(Rational cap, std::vector<Rational> values) {
  Valuation v;
  v.n = static_cast<int>(values.size());
  v.kind = BudgetAdditiveValuation{std::move(cap), std::move(values)};
  return v;
}

inline Valuation make_table(int n, std::vector<Rational> table,
                            TableClass declared = TableClass::kGeneralMonotone) {
  if (table.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("table must have 2^n entries");
  }
  Valuation v;
  v.n = n;
  v.kind = TableValuation{declared, std::move(table)};
  return v;
}

inline Valuation make_xos(int n, std::vector<std::vector<Rational>> clauses) {
  for (const auto& clause : clauses) {
    if (static_cast<int>(clause.size()) != n) {
      throw std::invalid_argument("XOS clause length must equal n");
    }
  }
  Valuation v;
  v.n = n;
  v.kind = XosValuation{std::move(clauses)};
  return v;
}

/// Marginal value v_T(S) = v(T) - v(T \ S); requires S ⊆ T.
inline Rational marginal(const Valuation& v, ItemSet t, ItemSet s) {
  if (!is_subset(s, t)) throw std::invalid_argument("marginal: S must be a subset of T");
  return v.value(t) - v.value(t & ~s);
}

/// Vector of v_N(i) for every item. For additive valuations this is just
/// the item values.
inline std::vector<Rational> item_marginals(const Valuation& v) {
  ItemSet n_set = full_set(v.n);
  std::vector<Rational> out;
  out.reserve(v.n);
  for (int i = 0; i < v.n; ++i) {
    out.push_back(marginal(v, n_set, ItemSet{1} << i));
  }
  return out;
}

struct ValidationReport {
  bool normalized = true;
  bool monotone = true;
  // Pairs (S, S ∪ {x}) with v(S) > v(S ∪ {x}).
  std::vector<std::pair<ItemSet, ItemSet>> monotonicity_violations;
  // Only set for tables declared submodular.
  std::optional<bool> submodular;
  // Triples (S, x, y) with v(S+x) - v(S) < v(S+x+y) - v(S+y).
  std::vector<std::tuple<ItemSet, int, int>> submodularity_violations;
  bool negative_entries = false;

  bool ok() const {
    return normalized && monotone && !negative_entries && submodular.value_or(true);
  }
};

/// Checks normalization, monotonicity and (for tables declared submodular)
/// the full pairwise diminishing-returns condition. Structural kinds with
/// nonnegative entries are monotone by construction; only the entries are
/// inspected.
inline ValidationReport validate(const Valuation& v) {
  ValidationReport report;
  auto check_entries = [&](const std::vector<Rational>& values) {
    for (const auto& x : values) {
      if (x < 0) report.negative_entries = true;
    }
  };
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          check_entries(k.values);
        } else if constexpr (std::is_same_v<T, BudgetAdditiveValuation>) {
          check_entries(k.values);
          if (k.cap < 0) report.negative_entries = true;
        } else if constexpr (std::is_same_v<T, XosValuation>) {
          for (const auto& clause : k.clauses) check_entries(clause);
        } else {
          const auto& table = k.values;
          if (table[0] != 0) report.normalized = false;
          ItemSet all = full_set(v.n);
          for (ItemSet s = 0; s <= all; ++s) {
            for (int x = 0; x < v.n; ++x) {
              if (contains(s, x)) continue;
              if (table[s] > table[with_item(s, x)]) {
                report.monotone = false;
                report.monotonicity_violations.emplace_back(s, with_item(s, x));
              }
            }
          }
          if (k.declared == TableClass::kSubmodular) {
            report.submodular = true;
            for (ItemSet s = 0; s <= all; ++s) {
              for (int x = 0; x < v.n; ++x) {
                if (contains(s, x)) continue;
                for (int y = x + 1; y < v.n; ++y) {
                  if (contains(s, y)) continue;
                  // Marginal of x may not grow when y is added first, and
                  // symmetrically for y.
                  const Rational mx_small = table[with_item(s, x)] - table[s];
                  const Rational mx_large =
                      table[with_item(with_item(s, x), y)] - table[with_item(s, y)];
                  if (mx_small < mx_large) {
                    report.submodular = false;
                    report.submodularity_violations.emplace_back(s, x, y);
                  }
                }
              }
            }
          }
        }
      },
      v.kind);
  if (report.negative_entries) report.monotone = false;
  return report;
}

struct Game {
  Valuation valuation;
  Rational budget;

  int n() const { return valuation.n; }
};

inline Game make_game(Valuation v, Rational budget) {
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  if (v.n < 1 || v.n > kMaxItems) {
    throw std::invalid_argument("item count out of range [1, " + std::to_string(kMaxItems) + "]");
  }
  return Game{std::move(v), std::move(budget)};
}

}  // namespace bpg
