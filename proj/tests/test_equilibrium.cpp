#include <catch2/catch_amalgamated.hpp>

#include "bpg/equilibrium.hpp"
#include "bpg/fixtures.hpp"
#include "bpg/oracle.hpp"

using namespace bpg;

namespace {

std::vector<Rational> additive_values(const Game& game) {
  return std::get<AdditiveValuation>(game.valuation.kind).values;
}

}  // namespace

TEST_CASE("relative valuation constraint") {
  Game sym = fixtures::symmetric_three();
  ConstraintReport ok = check_constraint(sym, full_set(3), additive_values(sym));
  CHECK(ok.holds);
  for (const auto& t : ok.per_item_threshold) CHECK(t == Rational(3, 2));

  Game pnl = fixtures::pne_not_l();
  ConstraintReport bad = check_constraint(pnl, full_set(4), additive_values(pnl));
  CHECK_FALSE(bad.holds);
  CHECK(bad.holds_per_item[0]);
  CHECK(bad.holds_per_item[1]);
  CHECK_FALSE(bad.holds_per_item[2]);
  CHECK(bad.per_item_threshold[2] == Rational(31, 30));

  // singleton convention: positive weight passes
  ConstraintReport single = check_constraint(sym, 0b001, additive_values(sym));
  CHECK(single.holds);
  CHECK(check_constraint(sym, 0b001, {Rational(0), Rational(0), Rational(0)}).holds == false);

  CHECK_THROWS_AS(check_constraint(sym, 0, additive_values(sym)), std::invalid_argument);
}

TEST_CASE("equal-utility prices") {
  Game sym = fixtures::symmetric_three();
  PriceVector p = equal_utility_prices(sym, full_set(3), additive_values(sym));
  CHECK(p == PriceVector(3, Rational(1, 3)));

  Game pnl = fixtures::pne_not_l();
  PriceVector on_l = equal_utility_prices(pnl, 0b0011, additive_values(pnl));
  CHECK(on_l == PriceVector{Rational(3, 4), Rational(1, 4), Rational(0), Rational(0)});

  Game xos = fixtures::xos_no_equilibrium();
  PriceVector xp = equal_utility_prices(xos, full_set(3), item_marginals(xos.valuation));
  CHECK(xp == PriceVector{Rational(7, 6), Rational(1, 6), Rational(1, 6)});

  // constraint violated on the full set of pne_not_l
  CHECK_THROWS_WITH(equal_utility_prices(pnl, full_set(4), additive_values(pnl)),
                    Catch::Matchers::ContainsSubstring("item 2"));
  // total weight below the budget
  Game light = make_game(make_additive({Rational(1, 4), Rational(1, 4)}), Rational(1));
  CHECK_THROWS_WITH(equal_utility_prices(light, full_set(2), additive_values(light)),
                    Catch::Matchers::ContainsSubstring("budget"));
}

TEST_CASE("equal-utility price identities hold on random games") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorSpec spec;
    spec.n = 2 + static_cast<int>(seed % 5);
    spec.budget_rule = BudgetRule::kConstraintHolds;
    spec.seed = 7000 + seed;
    Game game = generate(spec);
    std::vector<Rational> weights = additive_values(game);
    PriceVector p = equal_utility_prices(game, full_set(game.n()), weights);
    Rational sum = 0;
    for (const auto& x : p) {
      CHECK(x > 0);
      sum += x;
    }
    CHECK(sum == game.budget);
    Rational surplus = weights[0] - p[0];
    for (int i = 1; i < game.n(); ++i) CHECK(weights[i] - p[i] == surplus);
  }
}

TEST_CASE("base set construction") {
  CHECK(base_set(fixtures::pne_not_l()).items == 0b0011u);
  CHECK(base_set(fixtures::x_not_l()).items == 0b001u);
  CHECK(base_set(fixtures::symmetric_three()).items == 0b111u);
  CHECK_FALSE(base_set(fixtures::symmetric_three()).stop_witness.has_value());

  BaseSet stopped = base_set(fixtures::pne_not_l());
  REQUIRE(stopped.stop_witness.has_value());
  CHECK(stopped.stop_witness->first == 2);
  CHECK(stopped.stop_witness->second == Rational(5, 4));  // (3.5 - 1) / 2

  CHECK_THROWS_AS(base_set(fixtures::two_base_sets()), std::invalid_argument);
  Game cheap = make_game(make_additive({Rational(1, 4), Rational(1, 4)}), Rational(1));
  CHECK_THROWS_AS(base_set(cheap), std::invalid_argument);
}

TEST_CASE("base set postconditions on random games") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorSpec spec;
    spec.n = 2 + static_cast<int>(seed % 5);
    spec.budget_rule = BudgetRule::kBelowTotal;
    spec.seed = 7100 + seed;
    Game game = generate(spec);
    std::vector<Rational> values = additive_values(game);
    BaseSet l = base_set(game);
    REQUIRE(l.items != 0);

    Rational total = 0;
    for (int i : set_items(l.items)) total += values[i];
    CHECK(total > game.budget);
    CHECK(check_constraint(game, l.items, values).holds);

    // maximality: no strict superset passes the constraint
    ItemSet all = full_set(game.n());
    for (ItemSet m = 0; m <= all; ++m) {
      if (is_subset(l.items, m) && m != l.items) {
        CHECK_FALSE(check_constraint(game, m, values).holds);
      }
    }
    // equal-value closure: same-valued items are in or out together
    for (int i : set_items(l.items)) {
      for (int j = 0; j < game.n(); ++j) {
        if (values[j] == values[i]) CHECK(contains(l.items, j));
      }
    }
  }
}

TEST_CASE("move-in property on constraint-satisfying sets") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorSpec spec;
    spec.n = 2 + static_cast<int>(seed % 5);
    spec.budget_rule = BudgetRule::kConstraintHolds;
    spec.seed = 7200 + seed;
    Game game = generate(spec);
    std::vector<Rational> values = additive_values(game);
    ItemSet u = full_set(game.n());
    REQUIRE(check_constraint(game, u, values).holds);
    for (ItemSet a = u;; a = (a - 1) & u) {
      if (a != 0 && a != u) {
        Rational a_total = 0;
        for (int j : set_items(a)) a_total += values[j];
        Rational threshold = (a_total - game.budget) / set_size(a);
        for (int i : set_items(u & ~a)) CHECK(values[i] > threshold);
      }
      if (a == 0) break;
    }
  }
}

TEST_CASE("unbudgeted benchmark prices") {
  Game pnl = fixtures::pne_not_l();
  CHECK(bnl_prices(pnl) == additive_values(pnl));

  CHECK(bnl_prices(fixtures::xos_no_equilibrium()) ==
        std::vector<Rational>{Rational(2), Rational(1), Rational(1)});

  PriceVector bib = bnl_prices(fixtures::budget_is_bad());
  Rational total = 0;
  for (const auto& p : bib) total += p;
  CHECK(total == parse_rational("1.29"));
  CHECK(total > fixtures::budget_is_bad().budget);  // the within-budget premise fails
}

TEST_CASE("market clearing predicate") {
  Game sym = fixtures::symmetric_three();
  CHECK(is_market_clearing(sym, PriceVector(3, Rational(1, 3))));

  Game pnl = fixtures::pne_not_l();
  CHECK_FALSE(is_market_clearing(pnl, {parse_rational("0.6"), parse_rational("0.4"),
                                       parse_rational("0.3"), parse_rational("0.3")}));

  CHECK_FALSE(is_market_clearing(sym, {Rational(0), Rational(1, 3), Rational(1, 3)}));
}
