#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpg/demand.hpp"
#include "bpg/rational.hpp"
#include "bpg/valuation.hpp"

namespace bpg {

// Game file format: {"n": 3, "budget": "1", "valuation": {"kind": ...}}.
// Numbers are strings so they stay exact: decimals ("0.55"), fractions
// ("1/3") or integers.

namespace detail {

inline Rational number_field(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) throw std::invalid_argument("game file: missing field '" + field + "'");
  if (!j.at(field).is_string()) {
    throw std::invalid_argument("game file: field '" + field + "' must be a string number");
  }
  try {
    return parse_rational(j.at(field).get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("game file: field '" + field + "': " + e.what());
  }
}

inline std::vector<Rational> number_array(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field) || !j.at(field).is_array()) {
    throw std::invalid_argument("game file: missing array field '" + field + "'");
  }
  std::vector<Rational> out;
  for (const auto& entry : j.at(field)) {
    if (!entry.is_string()) {
      throw std::invalid_argument("game file: entries of '" + field + "' must be string numbers");
    }
    out.push_back(parse_rational(entry.get<std::string>()));
  }
  return out;
}

inline nlohmann::json to_number_array(const std::vector<Rational>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(format_decimal_or_fraction(v));
  return out;
}

}  // namespace detail

inline Game game_from_json(const nlohmann::json& j, int max_items = kMaxItems) {
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw std::invalid_argument("game file: missing integer field 'n'");
  }
  int n = j.at("n").get<int>();
  if (n < 1 || n > max_items) {
    throw std::invalid_argument("game file: n must be in [1, " + std::to_string(max_items) + "]");
  }
  Rational budget = detail::number_field(j, "budget");
  if (budget <= 0) throw std::invalid_argument("game file: budget must be positive");

  if (!j.contains("valuation") || !j.at("valuation").is_object()) {
    throw std::invalid_argument("game file: missing object field 'valuation'");
  }
  const auto& val = j.at("valuation");
  if (!val.contains("kind") || !val.at("kind").is_string()) {
    throw std::invalid_argument("game file: valuation needs a 'kind' string");
  }
  std::string kind = val.at("kind").get<std::string>();

  Valuation valuation;
  if (kind == "additive" || kind == "budget_additive") {
    std::vector<Rational> values = detail::number_array(val, "values");
    if (static_cast<int>(values.size()) != n) {
      throw std::invalid_argument("game file: 'values' must have n entries");
    }
    valuation = kind == "additive"
                    ? make_additive(std::move(values))
                    : make_budget_additive(detail::number_field(val, "cap"), std::move(values));
  } else if (kind == "table") {
    std::vector<Rational> table = detail::number_array(val, "table");
    if (table.size() != (std::size_t{1} << n)) {
      throw std::invalid_argument("game file: 'table' must have 2^n entries in bitmask order");
    }
    TableClass declared = TableClass::kGeneralMonotone;
    if (val.contains("declared_class")) {
      std::string cls = val.at("declared_class").get<std::string>();
      if (cls == "submodular") {
        declared = TableClass::kSubmodular;
      } else if (cls != "general_monotone") {
        throw std::invalid_argument("game file: declared_class must be 'submodular' or 'general_monotone'");
      }
    }
    valuation = make_table(n, std::move(table), declared);
  } else if (kind == "xos") {
    if (!val.contains("clauses") || !val.at("clauses").is_array() || val.at("clauses").empty()) {
      throw std::invalid_argument("game file: xos valuation needs a nonempty 'clauses' array");
    }
    std::vector<std::vector<Rational>> clauses;
    for (std::size_t c = 0; c < val.at("clauses").size(); ++c) {
      nlohmann::json wrapper;
      wrapper["clause"] = val.at("clauses").at(c);
      clauses.push_back(detail::number_array(wrapper, "clause"));
      if (static_cast<int>(clauses.back().size()) != n) {
        throw std::invalid_argument("game file: each clause must have n entries");
      }
    }
    valuation = make_xos(n, std::move(clauses));
  } else {
    throw std::invalid_argument("game file: unknown valuation kind '" + kind + "'");
  }
  return make_game(std::move(valuation), std::move(budget));
}

inline nlohmann::json game_to_json(const Game& game) {
  nlohmann::json j;
  j["n"] = game.n();
  j["budget"] = format_decimal_or_fraction(game.budget);
  nlohmann::json val;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          val["kind"] = "additive";
          val["values"] = detail::to_number_array(k.values);
        } else if constexpr (std::is_same_v<T, BudgetAdditiveValuation>) {
          val["kind"] = "budget_additive";
          val["cap"] = format_decimal_or_fraction(k.cap);
          val["values"] = detail::to_number_array(k.values);
        } else if constexpr (std::is_same_v<T, TableValuation>) {
          val["kind"] = "table";
          val["declared_class"] =
              k.declared == TableClass::kSubmodular ? "submodular" : "general_monotone";
          val["table"] = detail::to_number_array(k.values);
        } else {
          val["kind"] = "xos";
          val["clauses"] = nlohmann::json::array();
          for (const auto& clause : k.clauses) val["clauses"].push_back(detail::to_number_array(clause));
        }
      },
      game.valuation.kind);
  j["valuation"] = val;
  return j;
}

inline Game load_game(const std::string& path, int max_items = kMaxItems) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("game file '" + path + "' is not valid JSON: " + e.what());
  }
  return game_from_json(j, max_items);
}

inline void save_game(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write game file: " + path);
  out << game_to_json(game).dump(2) << "\n";
}

/// Comma-separated prices, each a decimal or fraction string.
inline PriceVector parse_prices(const std::string& text, int n) {
  PriceVector prices;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    prices.push_back(parse_rational(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (static_cast<int>(prices.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " prices, got " +
                                std::to_string(prices.size()));
  }
  for (const auto& p : prices) {
    if (p < 0) throw std::invalid_argument("prices must be nonnegative");
  }
  return prices;
}

}  // namespace bpg
