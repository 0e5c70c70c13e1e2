#pragma once

#include <map>
#include <optional>
#include <string>

#include "limitlab/errors.hpp"
#include "limitlab/interval.hpp"
#include "limitlab/rational.hpp"

namespace limitlab {

/// Eventually periodic base-3 expansion 0.preperiod(period).
struct TernaryExpansion {
  std::string preperiod;
  std::string period;
};

/// Expansion of y in [0, 1) produced by long division in base 3 (the one
/// that never ends in repeating 2s).
inline TernaryExpansion ternary_expansion(const Rational& y) {
  Integer num = y.get_num();
  const Integer& den = y.get_den();
  std::map<Integer, std::size_t> seen;
  std::string digits;
  while (seen.find(num) == seen.end()) {
    seen.emplace(num, digits.size());
    num *= 3;
    Integer d = num / den;
    digits.push_back(static_cast<char>('0' + d.get_si()));
    num -= d * den;
  }
  std::size_t start = seen[num];
  return {digits.substr(0, start), digits.substr(start)};
}

/// The expansion of y in [0, 1] that uses only digits 0 and 2, if any.
/// This is exactly the Cantor-set membership test.
inline std::optional<TernaryExpansion> cantor_expansion(const Rational& y) {
  if (y < 0 || y > 1) return std::nullopt;
  if (y == 1) return TernaryExpansion{"", "2"};
  TernaryExpansion e = ternary_expansion(y);
  auto only02 = [](const std::string& s) { return s.find('1') == std::string::npos; };
  if (only02(e.preperiod) && only02(e.period)) return e;
  if (e.period == "0") {
    // terminating: ...1 000... also equals ...0 222...
    std::size_t last = e.preperiod.find_last_not_of('0');
    if (last != std::string::npos && e.preperiod[last] == '1' && only02(e.preperiod.substr(0, last)))
      return TernaryExpansion{e.preperiod.substr(0, last) + "0", "2"};
  }
  return std::nullopt;
}

/// The affine Cantor set {offset + scale * c : c in C}.
struct CantorMap {
  Rational offset = 0;
  Rational scale = 1;

  Rational to_unit(const Rational& x) const { return (x - offset) / scale; }
  Rational from_unit(const Rational& y) const { return offset + scale * y; }

  Interval to_unit(const Interval& iv) const {
    auto map = [&](const Endpoint& e) {
      return e.infinite ? e : Endpoint{to_unit(e.value), false, e.included};
    };
    if (scale > 0) return Interval(map(iv.lo()), map(iv.hi()));
    Endpoint lo = iv.hi().infinite ? Endpoint::unbounded() : map(iv.hi());
    Endpoint hi = iv.lo().infinite ? Endpoint::unbounded() : map(iv.lo());
    return Interval(lo, hi);
  }

  /// Smallest interval containing the set.
  Interval hull() const {
    Rational a = from_unit(0), b = from_unit(1);
    return Interval::closed(min_of(a, b), max_of(a, b));
  }

  bool contains(const Rational& x) const { return cantor_expansion(to_unit(x)).has_value(); }

  bool operator==(const CantorMap& o) const { return offset == o.offset && scale == o.scale; }
};

namespace detail {

// Does C meet the open unit-space interval (u, v)? Brick endpoints belong
// to C, so a brick with an endpoint inside (u, v) settles the question;
// otherwise only bricks straddling the whole of (u, v) are refined.
inline bool cantor_meets_open_unit(const Rational& u, const Rational& v) {
  if (!(u < v)) return false;
  Rational lo = 0, hi = 1;
  std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
  for (int guard = 0; !stack.empty(); ++guard) {
    if (guard > 200000) throw RangeError("Cantor brick search exceeded its budget");
    auto [b0, b1] = stack.back();
    stack.pop_back();
    if (b1 <= u || b0 >= v) continue;
    if ((u < b0 && b0 < v) || (u < b1 && b1 < v)) return true;
    Rational w = (b1 - b0) / 3;
    stack.emplace_back(b0, b0 + w);
    stack.emplace_back(b1 - w, b1);
  }
  return false;
}

}  // namespace detail

/// True iff the affine Cantor set meets iv.
inline bool cantor_meets_interval(const CantorMap& c, const Interval& iv) {
  Interval j = c.to_unit(iv).intersect(Interval::closed(0, 1));
  if (j.is_empty()) return false;
  if (j.lo().included && cantor_expansion(j.lo().value)) return true;
  if (j.hi().included && cantor_expansion(j.hi().value)) return true;
  return detail::cantor_meets_open_unit(j.lo().value, j.hi().value);
}

/// True iff every interval (a, a + eta) (side > 0) or (a - eta, a)
/// (side < 0) meets the set.
inline bool cantor_accumulates(const CantorMap& c, const Rational& a, int side) {
  auto e = cantor_expansion(c.to_unit(a));
  if (!e) return false;
  int unit_side = c.scale > 0 ? side : -side;
  // right-isolated points end in repeating 2s, left-isolated ones in 0s
  return unit_side > 0 ? e->period != "2" : e->period != "0";
}

/// A radius eta > 0 such that the one-sided window next to a misses the
/// set. Requires !cantor_accumulates(c, a, side).
inline Rational cantor_gap_radius(const CantorMap& c, const Rational& a, int side) {
  for (long k = 0; k < 4096; ++k) {
    Rational eta = power_of_two(-k);
    Interval w = side > 0 ? Interval::open(a, a + eta) : Interval::open(a - eta, a);
    if (!cantor_meets_interval(c, w)) return eta;
  }
  throw RangeError("no Cantor gap found near " + to_string(a));
}

}  // namespace limitlab
