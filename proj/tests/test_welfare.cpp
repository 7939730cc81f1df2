#include <catch2/catch_amalgamated.hpp>

#include "bpg/fixtures.hpp"
#include "bpg/welfare.hpp"

using namespace bpg;

TEST_CASE("welfare excludes zero-priced items") {
  PoaFamily family = poa_family(9);
  WelfareReport worst = social_welfare(family.game, family.worst);
  CHECK(worst.welfare == 2);
  CHECK(worst.chosen == full_set(9));  // the buyer still takes everything free
  CHECK(worst.excluded_free_items == (full_set(9) & ~1u));
  CHECK_FALSE(worst.market_clearing);

  WelfareReport best = social_welfare(family.game, family.best);
  CHECK(best.welfare == 8);
  CHECK(best.excluded_free_items == 0u);

  WelfareReport free = social_welfare(family.game, PriceVector(9, Rational(0)));
  CHECK(free.welfare == 0);
  CHECK(free.chosen == full_set(9));
}

TEST_CASE("market clearing welfare is the full set value") {
  Game sym = fixtures::symmetric_three();
  WelfareReport report = social_welfare(sym, PriceVector(3, Rational(1, 3)));
  CHECK(report.market_clearing);
  CHECK(report.welfare == sym.valuation.value(full_set(3)));
}

TEST_CASE("equilibrium ratio over candidate sets") {
  Game sym = fixtures::symmetric_three();
  PriceVector eq(3, Rational(1, 3));

  RatioReport single = equilibrium_ratio(sym, {eq});
  CHECK(single.ratio == 1);
  CHECK(single.equilibria.size() == 1);

  // non-equilibria are filtered out before the ratio
  RatioReport filtered =
      equilibrium_ratio(sym, {eq, {Rational(1, 4), Rational(1, 3), Rational(1, 3)}});
  CHECK(filtered.equilibria.size() == 1);
  CHECK(filtered.ratio == 1);

  CHECK_THROWS_AS(equilibrium_ratio(sym, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      equilibrium_ratio(sym, {{Rational(1, 4), Rational(1, 3), Rational(1, 3)}}),
      std::runtime_error);
}

TEST_CASE("family construction") {
  PoaFamily f9 = poa_family(9);
  const auto& values = std::get<AdditiveValuation>(f9.game.valuation.kind).values;
  CHECK(values[0] == 2);
  for (int i = 1; i <= 6; ++i) CHECK(values[i] == 1);
  CHECK(values[7] == parse_rational("0.55"));
  CHECK(values[8] == parse_rational("0.55"));
  CHECK(f9.game.budget == 1);
  CHECK(f9.worst == PriceVector{Rational(1), 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(f9.best[0] == Rational(1, 2));
  for (int i = 1; i <= 6; ++i) CHECK(f9.best[i] == Rational(1, 12));
  CHECK(f9.best[7] == Rational(1, 4));
  CHECK(f9.best[8] == Rational(1, 4));

  PoaFamily f10 = poa_family(10);
  CHECK(social_welfare(f10.game, f10.best).welfare == 9);
  CHECK(social_welfare(f10.game, f10.worst).welfare == 2);

  CHECK_THROWS_AS(poa_family(8), std::invalid_argument);
  CHECK_THROWS_AS(poa_family(6), std::invalid_argument);

  // scaled variant keeps the structure
  PoaFamily scaled = poa_family(9, 5);
  const auto& sv = std::get<AdditiveValuation>(scaled.game.valuation.kind).values;
  CHECK(sv[0] == 5);
  CHECK(sv[1] == 4);
  CHECK(base_set(scaled.game).items == 1u);
}

TEST_CASE("ratio at least one and welfare bounded by the full set") {
  PoaFamily family = poa_family(9);
  for (const PriceVector& p : {family.worst, family.best}) {
    WelfareReport report = social_welfare(family.game, p);
    CHECK(report.welfare <= family.game.valuation.value(full_set(9)));
  }
  CHECK(social_welfare(family.game, family.best).welfare /
            social_welfare(family.game, family.worst).welfare >=
        1);
}
