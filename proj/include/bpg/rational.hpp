#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bpg {

// All game quantities (values, prices, budgets, utilities) are exact
// rationals. The equilibrium conditions are strict inequalities, so no
// floating point is used anywhere in the core.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline Integer pow10(std::size_t k) {
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

inline Integer parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("bad digit in number: '" + std::string(s) + "'");
    }
  }
  // strip leading zeros; boost's string constructor would read them as an
  // octal prefix ("08" in ".08" is not octal)
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace detail

/// Parses "3", "-1.25" (exact decimal fraction) or "7/6".
inline Rational parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(s.substr(0, slash));
    Integer den = detail::parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
    result = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("bad number: '.'");
    Integer num = whole.empty() ? Integer(0) : detail::parse_integer(whole);
    Integer scale = detail::pow10(frac.size());
    num *= scale;
    if (!frac.empty()) num += detail::parse_integer(frac);
    result = Rational(num, scale);
  } else {
    result = Rational(detail::parse_integer(s));
  }
  return negative ? -result : result;
}

/// "7/6" for non-integers, "2" for integers.
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

/// Emits a finite decimal ("0.55") when the denominator is of the form
/// 2^a 5^b, a fraction string otherwise. parse_rational round-trips both.
inline std::string format_decimal_or_fraction(const Rational& r) {
  Integer den = denominator(r);
  std::size_t twos = 0, fives = 0;
  Integer d = den;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return format_rational(r);
  std::size_t digits = std::max(twos, fives);
  if (digits == 0) return numerator(r).str();
  Integer scaled = numerator(r) * (detail::pow10(digits) / den);
  bool negative = scaled < 0;
  std::string body = Integer(abs(scaled)).str();
  if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
  body.insert(body.size() - digits, ".");
  return negative ? "-" + body : body;
}

}  // namespace bpg
