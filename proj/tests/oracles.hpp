#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's set algebra; expected values are derived from first principles.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "limitlab/rational.hpp"

namespace oracle {

using limitlab::make_rational;
using limitlab::Rational;

// Cantor membership by iterating the tent-like map: x survives while its
// orbit under x -> 3x (left third) / 3x - 2 (right third) avoids (1/3, 2/3).
inline bool in_cantor(Rational x) {
  if (x < 0 || x > 1) return false;
  std::set<Rational> seen;
  while (seen.insert(x).second) {
    if (x > Rational(1, 3) && x < Rational(2, 3)) return false;
    x = x <= Rational(1, 3) ? Rational(3 * x) : Rational(3 * x - 2);
  }
  return true;
}

// Lebesgue measure of a finite union of [lo, hi) by sort and merge.
inline Rational union_length(std::vector<std::pair<Rational, Rational>> ivs) {
  std::sort(ivs.begin(), ivs.end());
  Rational total = 0, cur_lo, cur_hi;
  bool open = false;
  for (const auto& [lo, hi] : ivs) {
    if (hi <= lo) continue;
    if (open && lo <= cur_hi) {
      cur_hi = std::max(cur_hi, hi);
      continue;
    }
    if (open) total += cur_hi - cur_lo;
    cur_lo = lo, cur_hi = hi, open = true;
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

inline Rational pow2(int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r /= 2;
  return r;
}

// Members [1/n - 2^-n, 1/n) of the shrinking family, n = from..to.
inline std::vector<std::pair<Rational, Rational>> omega_members(int from, int to) {
  std::vector<std::pair<Rational, Rational>> out;
  for (int n = from; n <= to; ++n) out.push_back({make_rational(1, n) - pow2(n), make_rational(1, n)});
  return out;
}

inline bool in_omega(const Rational& x) {
  if (x <= 0 || x >= 1) return false;
  // a member containing x has 1/n > x, so n < 1/x
  Rational bound = 1 / x + 1;
  for (int n = 1; n <= bound; ++n)
    if (make_rational(1, n) - pow2(n) <= x && x < make_rational(1, n)) return true;
  return false;
}

// Evenly spaced rationals in [lo, hi], both ends included.
inline std::vector<Rational> grid(const Rational& lo, const Rational& hi, int steps) {
  std::vector<Rational> out;
  for (int i = 0; i <= steps; ++i) out.push_back(lo + (hi - lo) * make_rational(i, steps));
  return out;
}

// Rationals p/q with |p/q| <= span and q <= max_den.
inline std::vector<Rational> farey(int span, int max_den) {
  std::set<Rational> out;
  for (int q = 1; q <= max_den; ++q)
    for (int p = -span * q; p <= span * q; ++p) out.insert(make_rational(p, q));
  return {out.begin(), out.end()};
}

}  // namespace oracle
