#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bpg/demand.hpp"
#include "bpg/equilibrium.hpp"
#include "bpg/fixtures.hpp"
#include "bpg/oracle.hpp"
#include "bpg/rational.hpp"
#include "bpg/subset.hpp"
#include "bpg/valuation.hpp"
#include "bpg/verifier.hpp"
#include "bpg/welfare.hpp"

namespace bpg::repro {

enum class Status { kConfirmed, kConfirmedWithDiscrepancy, kFailed };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::kConfirmed:
      return "confirmed";
    case Status::kConfirmedWithDiscrepancy:
      return "confirmed-with-paper-discrepancy";
    default:
      return "failed";
  }
}

struct CaseResult {
  Status status = Status::kConfirmed;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      status = Status::kFailed;
      notes.push_back("FAILED: " + what);
    }
  }
  void discrepancy(const std::string& what) {
    if (status == Status::kConfirmed) status = Status::kConfirmedWithDiscrepancy;
    notes.push_back("discrepancy: " + what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

struct ReproCase {
  std::string id;
  std::string summary;
  std::function<CaseResult()> run;
};

namespace cases {

// B=1, values (2, 1/2): the only equilibria price item 0 at the full
// budget, vendor 1 is never paid.
inline CaseResult two_item_dominant() {
  CaseResult result;
  Game game = fixtures::two_item_additive();
  for (const char* x : {"0", "0.3", "2"}) {
    PriceVector p{Rational(1), parse_rational(x)};
    VerifyReport report = verify_pne(game, p);
    result.check(report.is_pne, std::string("(1, ") + x + ") should be a PNE");
    result.check(demand(game, p).positively_priced == ItemSet{1},
                 "only item 0 should be paid for at (1, " + std::string(x) + ")");
  }
  auto survivors = grid_enumerate(game, GridSpec{Rational(1, 4), 0});
  result.check(!survivors.empty(), "grid should find the equilibrium family");
  for (const auto& s : survivors) {
    result.check(s.prices[0] == 1, "every grid survivor should price item 0 at 1");
    result.check(!contains(s.outcome.positively_priced, 1),
                 "vendor 1 should never be paid at a survivor");
    result.check(s.exact_pne, "every grid survivor should verify exactly");
  }
  return result;
}

// Additive (2,2,2), B=1: a small price increase forces the buyer to drop an
// item even though the other prices are unchanged, so the valuation is not
// gross substitutes.
inline CaseResult price_rigidity_additive() {
  CaseResult result;
  Game game = fixtures::symmetric_three();
  PriceVector cheap{parse_rational("0.2"), parse_rational("0.4"), parse_rational("0.4")};
  result.check(demand(game, cheap).chosen == full_set(3), "all items affordable at (0.2,0.4,0.4)");
  PriceVector tight{parse_rational("0.3"), parse_rational("0.4"), parse_rational("0.4")};
  DemandOutcome outcome = demand(game, tight);
  result.check(outcome.chosen != full_set(3) && contains(outcome.chosen, 0) &&
                   set_size(outcome.chosen) == 2,
               "buyer must give up item 1 or item 2 at (0.3,0.4,0.4)");
  result.check(outcome.num_optima == 2, "the dropped item should be a genuine tie");
  return result;
}

// Budget-additive cap 2 over (1,1,2), B=2: items 0,1 at prices (0,1/2)
// versus only item 2 once item 0 costs 1.
inline CaseResult price_rigidity_budget_additive() {
  CaseResult result;
  Game game = fixtures::budget_additive_three();
  PriceVector low{Rational(0), Rational(1, 2), Rational(1)};
  result.check(demand(game, low).chosen == ItemSet{0b011}, "items 0 and 1 bought at (0,1/2,1)");
  PriceVector high{Rational(1), Rational(1, 2), Rational(1)};
  result.check(demand(game, high).chosen == ItemSet{0b100}, "only item 2 bought at (1,1/2,1)");
  return result;
}

// Additive (2,2,2), B=1: the equal-utility prices (1/3,1/3,1/3) are the
// unique market clearing PNE.
inline CaseResult equal_utility_point() {
  CaseResult result;
  Game game = fixtures::symmetric_three();
  std::vector<Rational> weights{Rational(2), Rational(2), Rational(2)};
  result.check(check_constraint(game, full_set(3), weights).holds,
               "(2,2,2) with B=1 satisfies the relative valuation constraint");
  PriceVector p = equal_utility_prices(game, full_set(3), weights);
  result.check(p == PriceVector(3, Rational(1, 3)), "equal-utility prices should be (1/3,1/3,1/3)");
  result.check(verify_pne(game, p).is_pne, "(1/3,1/3,1/3) should be a PNE");
  result.check(is_market_clearing(game, p), "(1/3,1/3,1/3) should clear the market");
  return result;
}

// Additive (2, 1.5, 0.6, 0.6), B=1: prices (0.6, 0.4, 0.3, 0.3) are a
// non-market-clearing PNE selling exactly the base set {0,1}.
inline CaseResult non_clearing_base_set() {
  CaseResult result;
  Game game = fixtures::pne_not_l();
  result.check(base_set(game).items == ItemSet{0b0011}, "base set should be {0,1}");
  PriceVector p{parse_rational("0.6"), parse_rational("0.4"), parse_rational("0.3"),
                parse_rational("0.3")};
  DemandOutcome outcome = demand(game, p);
  result.check(outcome.chosen == ItemSet{0b0011}, "buyer should take {0,1}");
  result.check(outcome.buyer_utility == parse_rational("2.5"), "buyer utility should be 2.5");
  result.check(verify_pne(game, p).is_pne, "(0.6,0.4,0.3,0.3) should be a PNE");
  result.check(!is_market_clearing(game, p), "items 2,3 stay unsold");
  return result;
}

// Additive (2.5, 1.5, 1.4), B=1: the PNE (0.9, 0.1, 0.9) sells {0,1}, a
// strict superset of the base set {0}.
inline CaseResult sold_set_exceeds_base_set() {
  CaseResult result;
  Game game = fixtures::x_not_l();
  result.check(base_set(game).items == ItemSet{0b001}, "base set should be {0}");
  PriceVector p{parse_rational("0.9"), parse_rational("0.1"), parse_rational("0.9")};
  result.check(demand(game, p).chosen == ItemSet{0b011}, "buyer should take {0,1}");
  result.check(verify_pne(game, p).is_pne, "(0.9,0.1,0.9) should be a PNE");
  return result;
}

// Submodular table, B=0.3: both {a,b,c} and {a,b,d} satisfy the constraint
// under their own in-set marginals, N does not, so no unique maximal set.
inline CaseResult two_maximal_sets() {
  CaseResult result;
  Game game = fixtures::two_base_sets();
  result.check(validate(game.valuation).ok(), "fixture table should validate as submodular");
  ItemSet all = full_set(4);
  for (ItemSet s : {ItemSet{0b0111}, ItemSet{0b1011}}) {
    std::vector<Rational> weights(4, Rational(0));
    for (int i : set_items(s)) weights[i] = marginal(game.valuation, s, ItemSet{1} << i);
    for (int i : set_items(s)) {
      result.check(weights[i] == Rational(1, 4),
                   "in-set marginals of " + format_set(s) + " should all be 1/4");
    }
    result.check(check_constraint(game, s, weights).holds,
                 format_set(s) + " should satisfy the constraint");
  }
  ConstraintReport full = check_constraint(game, all, item_marginals(game.valuation));
  result.check(!full.holds, "the full set should fail the constraint");
  result.check(full.holds_per_item[0] && full.holds_per_item[1] && !full.holds_per_item[2] &&
                   !full.holds_per_item[3],
               "the full-set constraint should fail exactly at items 2 and 3");
  return result;
}

// Submodular table, B=1: the restricted-purchase PNE at (1/2,1/2,1/4,1/4)
// exists, and the unbudgeted marginal prices contradict the stated
// within-budget premise.
inline CaseResult budget_reveal_hurts() {
  CaseResult result;
  Game game = fixtures::budget_is_bad();
  result.check(validate(game.valuation).ok(), "fixture table should validate as submodular");
  PriceVector p{Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  result.check(demand(game, p).chosen == ItemSet{0b0011}, "buyer should only buy items 0 and 1");
  result.check(verify_pne(game, p).is_pne, "(1/2,1/2,1/4,1/4) should be a PNE");

  std::vector<Rational> marginals = item_marginals(game.valuation);
  std::vector<Rational> expected{parse_rational("0.635"), parse_rational("0.635"),
                                 parse_rational("0.01"), parse_rational("0.01")};
  result.check(marginals == expected, "table marginals should be (0.635,0.635,0.01,0.01)");
  result.discrepancy(
      "stated marginals (0.27, 0.27, 0.1, 0.1) disagree with the set values, which give "
      "(0.635, 0.635, 0.01, 0.01); their sum 1.29 exceeds the budget 1, so the "
      "marginal-price profile is not within budget");
  Rational total = 0;
  for (const auto& m : marginals) total += m;
  result.check(total > game.budget, "computed marginal prices should exceed the budget");
  return result;
}

// XOS over (2,1,1) and (3,0,0), B=3/2: the equal-marginal-utility prices
// (7/6,1/6,1/6) are not an equilibrium; vendor 0 has an attainable
// profitable deviation, though not the one originally claimed.
inline CaseResult xos_no_equal_utility() {
  CaseResult result;
  Game game = fixtures::xos_no_equilibrium();
  std::vector<Rational> marginals = item_marginals(game.valuation);
  result.check(marginals == std::vector<Rational>{Rational(2), Rational(1), Rational(1)},
               "item marginals should be (2,1,1)");
  result.check(check_constraint(game, full_set(3), marginals).holds,
               "marginals should satisfy the constraint");
  PriceVector p = equal_utility_prices(game, full_set(3), marginals);
  result.check(p == PriceVector{Rational(7, 6), Rational(1, 6), Rational(1, 6)},
               "equal-utility prices should be (7/6,1/6,1/6)");
  VerifyReport report = verify_pne(game, p);
  result.check(!report.is_pne, "(7/6,1/6,1/6) should not be a PNE");
  const auto& vendor0 = report.vendors[0];
  result.check(vendor0.witness.has_value() && vendor0.witness->price > Rational(7, 6) &&
                   vendor0.witness->price < Rational(4, 3),
               "vendor 0 should have a profitable deviation in (7/6, 4/3)");

  // The claimed deviation to 4/3 does not work as stated: there the buyer
  // is indifferent and, being maximal, takes {1,2}; and the utility of
  // {0,1} at that price is 3/2, not 5/2.
  PriceVector at_bound{Rational(4, 3), Rational(1, 6), Rational(1, 6)};
  result.check(demand(game, at_bound).chosen == ItemSet{0b110},
               "at price 4/3 the maximal buyer prefers {1,2}");
  result.check(buyer_utility(game, ItemSet{0b011}, at_bound) == Rational(3, 2),
               "utility of {0,1} at the claimed deviation is 3/2");
  result.discrepancy(
      "the non-equilibrium verdict holds, but via deviations strictly inside (7/6, 4/3): at "
      "4/3 exactly the maximal buyer switches to {1,2}, and u({0,1}) there is 3/2, not 5/2");
  return result;
}

// Additive welfare-gap family at n=9: the all-budget-on-item-0 equilibrium
// has welfare 2, the spread-price equilibrium has welfare 8.
inline CaseResult welfare_gap_family() {
  CaseResult result;
  PoaFamily family = poa_family(9);
  result.check(base_set(family.game).items == ItemSet{1}, "base set should be {0}");
  WelfareReport worst = social_welfare(family.game, family.worst);
  result.check(worst.welfare == 2, "worst-equilibrium welfare should be 2");
  result.check(worst.chosen == full_set(9) && worst.excluded_free_items == (full_set(9) & ~1u),
               "free items are consumed but excluded from welfare");
  WelfareReport best = social_welfare(family.game, family.best);
  result.check(best.welfare == 8, "best-equilibrium welfare should be 8 = 2 + (n-3)");
  result.check(best.welfare / worst.welfare == 4, "welfare ratio should be 4");
  return result;
}

}  // namespace cases

inline std::vector<ReproCase> all_cases() {
  return {
      {"two-item-dominant", "two items, B=1: only PNE give the whole budget to item 0",
       cases::two_item_dominant},
      {"price-rigidity-additive", "additive (2,2,2) satisfies the constraint, not gross substitutes",
       cases::price_rigidity_additive},
      {"price-rigidity-budget-additive", "budget-additive demand flips from {0,1} to {2}",
       cases::price_rigidity_budget_additive},
      {"equal-utility-point", "unique market clearing PNE at (1/3,1/3,1/3)",
       cases::equal_utility_point},
      {"non-clearing-base-set", "PNE selling exactly the base set, market does not clear",
       cases::non_clearing_base_set},
      {"sold-set-exceeds-base-set", "PNE whose sold set strictly contains the base set",
       cases::sold_set_exceeds_base_set},
      {"two-maximal-sets", "submodular: two distinct maximal constraint-satisfying sets",
       cases::two_maximal_sets},
      {"budget-reveal-hurts", "restricted-purchase PNE besides the marginal-price profile",
       cases::budget_reveal_hurts},
      {"xos-no-equal-utility", "XOS: equal-marginal-utility prices are not an equilibrium",
       cases::xos_no_equal_utility},
      {"welfare-gap-family", "n=9 family with equilibrium welfare 8 vs 2",
       cases::welfare_gap_family},
  };
}

}  // namespace bpg::repro
