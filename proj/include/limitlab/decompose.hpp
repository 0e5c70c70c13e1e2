#pragma once

#include <vector>

#include "limitlab/limits.hpp"

namespace limitlab {

/// f = g + h near a: g has the classical limit L, h vanishes off a small set.
struct Decomposition {
  PiecewiseFn g;
  PiecewiseFn h;
  Rational delta0;
  SetExpr exceptional_union;
};

namespace detail {

inline void require_small_type(LimitType t) {
  if (t != LimitType::T5 && t != LimitType::T6) throw RangeError("decomposition is defined for T5 and T6");
}

// Union of the effective guards whose gap is positive, restricted to the
// domain and the window of radius r.
inline SetExpr positive_gap_union(const PiecewiseFn& f, const LocalAnalysis& an, const Rational& r) {
  auto guards = f.effective_guards();
  std::vector<SetExpr> parts;
  for (std::size_t i = 0; i < guards.size(); ++i)
    if (an.gaps[i] > 0) parts.push_back(guards[i]);
  if (parts.empty()) return SetExpr::empty();
  return normalize(union_of(std::move(parts)) & f.domain & SetExpr::punctured_window(an.a, r));
}

}  // namespace detail

inline constexpr unsigned kMaxExplicitBands = 64;

/// A_n = E(1/n, delta(1/n)) with a nonincreasing delta schedule. Once 1/n
/// drops below the lowest gap band A_n is the positive-gap germ at radius
/// delta(1/n), so A_n for larger n adds nothing to the union.
inline Decomposition decompose(const PiecewiseFn& f, const Rational& a, const Rational& L, LimitType t) {
  detail::require_small_type(t);
  LocalAnalysis an = analyze_local(f, a, L);
  Verdict v = check(an, t);
  if (!v.pass())
    throw PrerequisiteNotMet("check(f, " + to_string(a) + ", " + to_string(L) + ", " + to_string(t) +
                             ") is " + to_string(v.status));
  std::vector<SetExpr> bands;
  unsigned long n0 = 1;
  while (Rational(1, static_cast<long>(n0)) > an.eps_rep && n0 < kMaxExplicitBands) ++n0;
  for (unsigned long n = 1; n <= n0; ++n) {
    Rational eps(1, static_cast<long>(n));
    bands.push_back(exceptional_set(f, a, L, witness_delta(an, eps), eps).outer);
  }
  bands.push_back(detail::positive_gap_union(f, an, an.radius));
  SetExpr u = normalize(union_of(std::move(bands)));

  Decomposition d;
  d.delta0 = witness_delta(an, 1);
  d.exceptional_union = u;
  d.g.domain = f.domain;
  d.g.branches.push_back(Branch{u, Poly::constant(L)});
  for (const auto& b : f.branches) d.g.branches.push_back(b);
  d.g.fallback = f.fallback;

  d.h.domain = f.domain;
  for (const auto& b : f.branches) d.h.branches.push_back(Branch{normalize(u & b.guard), b.value - Poly::constant(L)});
  d.h.branches.push_back(Branch{u, f.fallback - Poly::constant(L)});
  d.h.fallback = Poly();
  return d;
}

namespace detail {

inline std::vector<Rational> probe_points(const Rational& a, const Rational& delta0, std::size_t count) {
  std::vector<Rational> out;
  std::size_t half = count / 2;
  for (std::size_t k = 0; k < half; ++k)
    out.push_back(a - 2 + make_rational(4 * static_cast<long>(k), static_cast<long>(half)));
  for (std::size_t k = 0; out.size() < count; ++k)
    out.push_back(a - delta0 + delta0 * make_rational(2 * static_cast<long>(k) + 1, static_cast<long>(count - half)));
  return out;
}

}  // namespace detail

inline bool verify_decomposition(const Decomposition& d, const PiecewiseFn& f, const Rational& a, const Rational& L,
                                 LimitType t) {
  try {
    detail::require_small_type(t);
    if (d.delta0 <= 0) return false;
    for (const auto& x : detail::probe_points(a, d.delta0, 1000)) {
      if (!contains(f.domain, x)) continue;
      if (eval(d.g, x) + eval(d.h, x) != eval(f, x)) return false;
    }
    if (!check(d.g, a, L, LimitType::T1).pass()) return false;
    auto guards = d.h.effective_guards();
    auto vals = d.h.values();
    std::vector<SetExpr> support;
    for (std::size_t i = 0; i < guards.size(); ++i)
      if (!vals[i].is_zero()) support.push_back(guards[i]);
    if (support.empty()) return true;
    LocalTrace tr = window_trace(normalize(union_of(std::move(support)) & d.h.domain), a, d.delta0);
    return t == LimitType::T5 ? cardinality(tr).countable() : !has_positive_measure(tr.parts);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace limitlab
