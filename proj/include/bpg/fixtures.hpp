#pragma once

#include <string_view>
#include <vector>

#include "bpg/rational.hpp"
#include "bpg/valuation.hpp"

namespace bpg::fixtures {

namespace detail {
inline Rational r(std::string_view s) { return parse_rational(s); }
}  // namespace detail

/// B=1, additive (2, 1/2): the high-value vendor takes the whole budget.
inline Game two_item_additive() {
  return make_game(make_additive({Rational(2), Rational(1, 2)}), Rational(1));
}

/// B=1, additive (2,2,2): satisfies the relative valuation constraint but
/// is not gross substitutes.
inline Game symmetric_three() {
  return make_game(make_additive({Rational(2), Rational(2), Rational(2)}), Rational(1));
}

/// B=2, budget-additive cap 2 over (1,1,2): the Lehmann et al.
/// non-gross-substitutes fixture.
inline Game budget_additive_three() {
  return make_game(
      make_budget_additive(Rational(2), {Rational(1), Rational(1), Rational(2)}), Rational(2));
}

/// B=1, additive (2, 1.5, 0.6, 0.6): base set {0,1}, non-market-clearing
/// PNE at (0.6, 0.4, 0.3, 0.3).
inline Game pne_not_l() {
  using detail::r;
  return make_game(make_additive({r("2"), r("1.5"), r("0.6"), r("0.6")}), Rational(1));
}

/// B=1, additive (2.5, 1.5, 1.4): PNE at (0.9, 0.1, 0.9) sells {0,1}
/// although the base set is just {0}.
inline Game x_not_l() {
  using detail::r;
  return make_game(make_additive({r("2.5"), r("1.5"), r("1.4")}), Rational(1));
}

// The two symmetric table fixtures below state values for sets over items
// (a,b,c,d) = (0,1,2,3); values for sets not listed follow from swapping
// a with b and c with d. Tables are expanded by hand in bitmask order.

/// B=0.3 submodular table where both {a,b,c} and {a,b,d} satisfy the
/// constraint (equal in-set marginals 1/4) but N does not.
inline Game two_base_sets() {
  using detail::r;
  std::vector<Rational> t(16);
  t[0b0000] = r("0");
  t[0b0001] = r("1");     // {a}
  t[0b0010] = r("1");     // {b}
  t[0b0100] = r("0.5");   // {c}
  t[0b1000] = r("0.5");   // {d}
  t[0b0011] = r("1.5");   // {a,b}
  t[0b0101] = r("1.5");   // {a,c}
  t[0b1001] = r("1.5");   // {a,d} = {a,c} with c<->d
  t[0b0110] = r("1.5");   // {b,c} = {a,c} with a<->b
  t[0b1010] = r("1.5");   // {b,d}
  t[0b1100] = r("1");     // {c,d}
  t[0b0111] = r("1.75");  // {a,b,c}
  t[0b1011] = r("1.75");  // {a,b,d}
  t[0b1101] = r("1.52");  // {a,c,d}
  t[0b1110] = r("1.52");  // {b,c,d}
  t[0b1111] = r("1.76");
  return make_game(make_table(4, std::move(t), TableClass::kSubmodular), r("0.3"));
}

/// B=1 submodular table with a second, restricted-purchase equilibrium at
/// (1/2, 1/2, 1/4, 1/4): revealing the budget can hurt the buyer.
inline Game budget_is_bad() {
  using detail::r;
  std::vector<Rational> t(16);
  t[0b0000] = r("0");
  t[0b0001] = r("1");      // {a}
  t[0b0010] = r("1");      // {b}
  t[0b0100] = r("0.25");   // {c}
  t[0b1000] = r("0.25");   // {d}
  t[0b0011] = r("1.75");   // {a,b}
  t[0b0101] = r("1.125");  // {a,c}
  t[0b1001] = r("1.125");  // {a,d}
  t[0b0110] = r("1.125");  // {b,c}
  t[0b1010] = r("1.125");  // {b,d}
  t[0b1100] = r("0.5");    // {c,d}
  t[0b0111] = r("1.76");   // {a,b,c}
  t[0b1011] = r("1.76");   // {a,b,d}
  t[0b1101] = r("1.135");  // {a,c,d}
  t[0b1110] = r("1.135");  // {b,c,d}
  t[0b1111] = r("1.77");
  return make_game(make_table(4, std::move(t), TableClass::kSubmodular), Rational(1));
}

/// B=3/2, XOS over clauses (2,1,1) and (3,0,0): equal-marginal-utility
/// prices exist but are not an equilibrium.
inline Game xos_no_equilibrium() {
  return make_game(
      make_xos(3, {{Rational(2), Rational(1), Rational(1)},
                   {Rational(3), Rational(0), Rational(0)}}),
      Rational(3, 2));
}

}  // namespace bpg::fixtures
