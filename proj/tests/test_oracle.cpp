#include <catch2/catch_amalgamated.hpp>

#include "bpg/equilibrium.hpp"
#include "bpg/fixtures.hpp"
#include "bpg/oracle.hpp"

using namespace bpg;

namespace {

bool same_outcome(const DemandOutcome& a, const DemandOutcome& b) {
  return a.chosen == b.chosen && a.cost == b.cost && a.buyer_utility == b.buyer_utility &&
         a.positively_priced == b.positively_priced && a.num_optima == b.num_optima &&
         a.num_max_size_optima == b.num_max_size_optima;
}

}  // namespace

TEST_CASE("oracle demand matches on the fixture battery") {
  struct Case {
    Game game;
    PriceVector prices;
  };
  std::vector<Case> cases = {
      {fixtures::two_item_additive(), {Rational(1), parse_rational("0.2")}},
      {fixtures::symmetric_three(), {parse_rational("0.3"), parse_rational("0.4"),
                                     parse_rational("0.4")}},
      {fixtures::pne_not_l(),
       {parse_rational("0.6"), parse_rational("0.4"), parse_rational("0.3"),
        parse_rational("0.3")}},
      {fixtures::budget_additive_three(), {Rational(0), Rational(1, 2), Rational(1)}},
      {fixtures::budget_additive_three(), {Rational(1), Rational(1, 2), Rational(1)}},
      {fixtures::xos_no_equilibrium(), {Rational(7, 6), Rational(1, 6), Rational(1, 6)}},
      {fixtures::two_base_sets(), PriceVector(4, Rational(1, 20))},
  };
  for (const auto& c : cases) {
    CHECK(same_outcome(demand(c.game, c.prices), oracle_demand(c.game, c.prices)));
  }
  // footnote pair: v_1 and v_2 purchased at (0, 1/2, 1)
  CHECK(oracle_demand(fixtures::budget_additive_three(), {Rational(0), Rational(1, 2), Rational(1)})
            .chosen == 0b011u);
}

TEST_CASE("oracle demand differential fuzzing") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    GeneratorSpec spec;
    spec.n = 2 + static_cast<int>(rng() % 7);
    spec.valuation_class = static_cast<ValuationClass>(trial % 3);
    spec.seed = rng();
    Game game = generate(spec);
    PriceVector prices;
    for (int i = 0; i < game.n(); ++i) {
      prices.push_back(game.budget * Rational(rng() % 121, 100));
    }
    CHECK(same_outcome(demand(game, prices), oracle_demand(game, prices)));
  }
}

TEST_CASE("grid enumeration: dominant-item family") {
  Game two = fixtures::two_item_additive();
  auto survivors = grid_enumerate(two, GridSpec{Rational(1, 4), 0});
  REQUIRE_FALSE(survivors.empty());
  for (const auto& s : survivors) {
    CHECK(s.prices[0] == 1);
    CHECK_FALSE(contains(s.outcome.positively_priced, 1));
    CHECK(s.exact_pne);
  }
}

TEST_CASE("grid enumeration finds the equal-utility point") {
  Game sym = fixtures::symmetric_three();
  auto survivors = grid_enumerate(sym, GridSpec{Rational(1, 12), 0});
  bool found = false;
  for (const auto& s : survivors) {
    if (s.prices == PriceVector(3, Rational(1, 3))) {
      found = true;
      CHECK(s.exact_pne);
      CHECK(s.outcome.chosen == full_set(3));
    }
  }
  CHECK(found);
}

TEST_CASE("grid enumeration: single vendor takes the budget") {
  Game solo = make_game(make_additive({Rational(5)}), Rational(1));
  auto survivors = grid_enumerate(solo, GridSpec{Rational(1, 2), 0});
  REQUIRE(survivors.size() == 1);
  CHECK(survivors.front().prices == PriceVector{Rational(1)});
  CHECK(survivors.front().exact_pne);
}

TEST_CASE("grid enumeration respects the evaluation budget") {
  Game sym = fixtures::symmetric_three();
  GridSpec tiny{Rational(1, 24), 0, 100};
  CHECK_THROWS_AS(grid_enumerate(sym, tiny), std::runtime_error);
}

TEST_CASE("generator determinism and budget rules") {
  GeneratorSpec spec;
  spec.n = 3;
  spec.budget_rule = BudgetRule::kConstraintHolds;
  spec.seed = 7;
  Game a = generate(spec);
  Game b = generate(spec);
  CHECK(a.budget == b.budget);
  for (ItemSet s = 0; s <= full_set(3); ++s) {
    CHECK(a.valuation.value(s) == b.valuation.value(s));
  }
  CHECK(check_constraint(a, full_set(3), item_marginals(a.valuation)).holds);

  spec.budget_rule = BudgetRule::kConstraintFails;
  Game c = generate(spec);
  CHECK_FALSE(check_constraint(c, full_set(3), item_marginals(c.valuation)).holds);

  spec.budget_rule = BudgetRule::kBelowTotal;
  Game d = generate(spec);
  CHECK(d.valuation.value(full_set(3)) > d.budget);
}

TEST_CASE("generated coverage tables validate as submodular") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorSpec spec;
    spec.n = 3 + static_cast<int>(seed % 3);
    spec.valuation_class = ValuationClass::kSubmodularCoverage;
    spec.seed = 500 + seed;
    Game game = generate(spec);
    ValidationReport report = validate(game.valuation);
    CHECK(report.ok());
    CHECK(report.submodular == true);
  }
}

TEST_CASE("equal-utility construction appears among grid survivors") {
  // (2,2,2), B=1 has its equilibrium exactly on the 1/12 grid; coarser
  // grids that contain the point must keep it as a survivor
  Game sym = fixtures::symmetric_three();
  for (const Rational& step : {Rational(1, 3), Rational(1, 6), Rational(1, 12)}) {
    auto survivors = grid_enumerate(sym, GridSpec{step, 0});
    bool found = false;
    for (const auto& s : survivors) {
      found = found || s.prices == PriceVector(3, Rational(1, 3));
    }
    CHECK(found);
  }
}
