#include <catch2/catch_amalgamated.hpp>

#include "bpg/demand.hpp"
#include "bpg/fixtures.hpp"
#include "bpg/oracle.hpp"

using namespace bpg;

TEST_CASE("buyer utility with the budget cutoff") {
  Game two = fixtures::two_item_additive();
  CHECK_FALSE(buyer_utility(two, 0b11, {Rational(1), parse_rational("0.2")}).has_value());
  CHECK(buyer_utility(two, 0, {Rational(1), Rational(0)}) == Rational(0));

  Game xnl = fixtures::x_not_l();
  PriceVector p{parse_rational("0.9"), parse_rational("0.1"), parse_rational("0.9")};
  CHECK(buyer_utility(xnl, 0b011, p) == Rational(3));
}

TEST_CASE("demand picks the maximal utility-maximizing set") {
  Game pnl = fixtures::pne_not_l();
  DemandOutcome outcome = demand(pnl, {parse_rational("0.6"), parse_rational("0.4"),
                                       parse_rational("0.3"), parse_rational("0.3")});
  CHECK(outcome.chosen == 0b0011u);
  CHECK(outcome.buyer_utility == parse_rational("2.5"));
  CHECK(outcome.cost == Rational(1));
  CHECK(outcome.positively_priced == 0b0011u);
}

TEST_CASE("free goods are always taken") {
  for (const Game& game : {fixtures::pne_not_l(), fixtures::two_base_sets(),
                           fixtures::xos_no_equilibrium(), fixtures::budget_additive_three()}) {
    DemandOutcome outcome = demand(game, PriceVector(game.n(), Rational(0)));
    CHECK(outcome.chosen == full_set(game.n()));
    CHECK(outcome.positively_priced == 0u);
    CHECK(outcome.cost == 0);
  }
}

TEST_CASE("equal-cardinality ties resolve to the smallest bitmask") {
  Game sym = fixtures::symmetric_three();
  DemandOutcome outcome =
      demand(sym, {parse_rational("0.3"), parse_rational("0.4"), parse_rational("0.4")});
  CHECK(outcome.chosen == 0b011u);  // tied with {0,2}
  CHECK(outcome.buyer_utility == parse_rational("3.3"));
  CHECK(outcome.num_optima == 2);
  CHECK(outcome.num_max_size_optima == 2);
}

TEST_CASE("budget-additive demand from the cap fixture") {
  Game ba = fixtures::budget_additive_three();
  DemandOutcome outcome = demand(ba, {Rational(1), Rational(1, 2), Rational(1)});
  CHECK(outcome.chosen == 0b100u);
  CHECK(outcome.buyer_utility == Rational(1));
}

TEST_CASE("vendor utilities are payments") {
  Game pnl = fixtures::pne_not_l();
  PriceVector p{parse_rational("0.6"), parse_rational("0.4"), parse_rational("0.3"),
                parse_rational("0.3")};
  CHECK(vendor_utilities(demand(pnl, p), p) ==
        std::vector<Rational>{parse_rational("0.6"), parse_rational("0.4"), Rational(0),
                              Rational(0)});

  Game xnl = fixtures::x_not_l();
  PriceVector q{parse_rational("0.9"), parse_rational("0.1"), parse_rational("0.9")};
  CHECK(vendor_utilities(demand(xnl, q), q) ==
        std::vector<Rational>{parse_rational("0.9"), parse_rational("0.1"), Rational(0)});

  // nothing affordable: everything stays at zero
  Game two = fixtures::two_item_additive();
  PriceVector high{Rational(5), Rational(5)};
  DemandOutcome outcome = demand(two, high);
  CHECK(outcome.chosen == 0u);
  CHECK(vendor_utilities(outcome, high) == std::vector<Rational>{Rational(0), Rational(0)});
}

TEST_CASE("demand respects the budget and is deterministic") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorSpec spec;
    spec.n = 2 + static_cast<int>(rng() % 4);
    spec.valuation_class =
        static_cast<ValuationClass>(rng() % 3);
    spec.seed = rng();
    Game game = generate(spec);
    PriceVector prices;
    for (int i = 0; i < game.n(); ++i) {
      prices.push_back(game.budget * Rational(rng() % 121, 100));
    }
    DemandOutcome a = demand(game, prices);
    DemandOutcome b = demand(game, prices);
    CHECK(a.cost <= game.budget);
    CHECK(a.buyer_utility >= 0);
    CHECK(a.chosen == b.chosen);
    // every free item is consumed
    for (int i = 0; i < game.n(); ++i) {
      if (prices[i] == 0) CHECK(contains(a.chosen, i));
    }
  }
}
