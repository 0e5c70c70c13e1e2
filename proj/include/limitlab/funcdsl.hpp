#pragma once

#include <functional>
#include <string>
#include <vector>

#include "limitlab/analyzers.hpp"
#include "limitlab/poly.hpp"

namespace limitlab {

struct Branch {
  SetExpr guard;
  Poly value;
  bool operator==(const Branch& o) const { return guard == o.guard && value == o.value; }
};

/// f(x) = value of the first branch whose guard contains x, else the
/// default; defined on `domain` only.
struct PiecewiseFn {
  SetExpr domain = SetExpr::real_line();
  std::vector<Branch> branches;
  Poly fallback;

  static PiecewiseFn polynomial(Poly p) { return PiecewiseFn{SetExpr::real_line(), {}, std::move(p)}; }
  /// 1 on s, 0 elsewhere.
  static PiecewiseFn indicator(const SetExpr& s) {
    return PiecewiseFn{SetExpr::real_line(), {Branch{s, Poly::constant(1)}}, Poly()};
  }

  /// Guards with first-match semantics applied; the last entry belongs to
  /// the default branch.
  std::vector<SetExpr> effective_guards() const {
    std::vector<SetExpr> out;
    std::vector<SetExpr> earlier;
    for (const auto& b : branches) {
      if (earlier.empty()) out.push_back(b.guard);
      else {
        std::vector<SetExpr> parts{b.guard};
        parts.insert(parts.end(), earlier.begin(), earlier.end());
        out.push_back(SetExpr::node(SetExpr::Op::Difference, std::move(parts)));
      }
      earlier.push_back(b.guard);
    }
    std::vector<SetExpr> parts{SetExpr::real_line()};
    parts.insert(parts.end(), earlier.begin(), earlier.end());
    out.push_back(earlier.empty() ? SetExpr::real_line() : SetExpr::node(SetExpr::Op::Difference, std::move(parts)));
    return out;
  }

  /// Polynomials in the order of effective_guards().
  std::vector<Poly> values() const {
    std::vector<Poly> out;
    for (const auto& b : branches) out.push_back(b.value);
    out.push_back(fallback);
    return out;
  }

  bool operator==(const PiecewiseFn& o) const {
    return domain == o.domain && branches == o.branches && fallback == o.fallback;
  }
};

inline Rational eval(const PiecewiseFn& f, const Rational& x) {
  if (!contains(f.domain, x)) throw OutsideDomain(to_string(x) + " is outside the function's domain");
  for (const auto& b : f.branches)
    if (contains(b.guard, x)) return b.value(x);
  return f.fallback(x);
}

/// Binary operations and scaling. Division needs a divisor that is
/// constant and certified nonzero on each effective guard.
struct ArithOp {
  enum class Kind { Add, Sub, Mul, Div, Scale };
  Kind kind = Kind::Add;
  Rational lambda = 1;

  static ArithOp add() { return {Kind::Add, 1}; }
  static ArithOp sub() { return {Kind::Sub, 1}; }
  static ArithOp mul() { return {Kind::Mul, 1}; }
  static ArithOp div() { return {Kind::Div, 1}; }
  static ArithOp scale(Rational l) { return {Kind::Scale, std::move(l)}; }
};

namespace detail {

inline bool set_is_empty(const SetExpr& e) { return normal_form(e).empty(); }

// Does p vanish somewhere on s?
inline bool may_vanish_on(const Poly& p, const SetExpr& s) {
  if (p.is_zero()) return !set_is_empty(s);
  if (p.is_constant()) return false;
  NormalForm nf = normal_form(s);
  for (const auto& r : isolate_roots(p, power_of_two(-30))) {
    if (r.exact()) {
      if (nf.contains(r.lo)) return true;
      continue;
    }
    // irrational root: only thin sets of rationals can avoid it for sure
    for (const auto& piece : nf.pieces) {
      const Cell& c = piece.base;
      if (c.is_points() || c.is_sequence() || c.rational_only) continue;
      if (c.clip.intersects(Interval::open(r.lo, r.hi))) return true;
    }
  }
  return false;
}

}  // namespace detail

inline PiecewiseFn arith(const PiecewiseFn& f, const PiecewiseFn& g, const ArithOp& op) {
  using K = ArithOp::Kind;
  if (op.kind == K::Scale) {
    PiecewiseFn out = f;
    for (auto& b : out.branches) b.value = b.value.scaled(op.lambda);
    out.fallback = f.fallback.scaled(op.lambda);
    return out;
  }
  if (f.domain != g.domain && normal_form(f.domain) != normal_form(g.domain))
    throw RangeError("arithmetic needs functions on the same domain");
  if (op.kind == K::Div) {
    auto guards = g.effective_guards();
    auto vals = g.values();
    for (std::size_t i = 0; i < guards.size(); ++i) {
      SetExpr where = guards[i] & g.domain;
      if (detail::set_is_empty(where)) continue;
      if (detail::may_vanish_on(vals[i], where))
        throw DivisionByPossiblyZero("divisor may vanish on its branch guard");
      if (!vals[i].is_constant()) throw NonPolynomialQuotient("divisor branch is not constant");
    }
  }
  auto combine = [&](const Poly& p, const Poly& q) -> Poly {
    switch (op.kind) {
      case K::Add: return p + q;
      case K::Sub: return p - q;
      case K::Mul: return p * q;
      case K::Div: return q.is_zero() ? Poly() : p.scaled(Rational(1) / q.constant_value());
      default: return p;
    }
  };
  PiecewiseFn out;
  out.domain = f.domain;
  for (const auto& a : f.branches)
    for (const auto& b : g.branches) {
      SetExpr both = a.guard & b.guard;
      out.branches.push_back(Branch{both, combine(a.value, b.value)});
    }
  for (const auto& a : f.branches) out.branches.push_back(Branch{a.guard, combine(a.value, g.fallback)});
  for (const auto& b : g.branches) out.branches.push_back(Branch{b.guard, combine(f.fallback, b.value)});
  out.fallback = combine(f.fallback, g.fallback);
  return out;
}

/// inner ⊆ S ⊆ outer, with gap bounding the measure of outer \ inner.
struct SandwichSet {
  SetExpr inner;
  SetExpr outer;
  Rational gap = 0;
};

namespace detail {

// {x : q(x) >= 0} sandwiched; `avoid` points never fall inside a root
// enclosure.
inline SandwichSet nonnegative_set(const Poly& q, const Rational& width, std::span<const Rational> avoid) {
  if (q.is_constant()) {
    SetExpr s = q.constant_value() >= 0 ? SetExpr::real_line() : SetExpr::empty();
    return {s, s, 0};
  }
  auto roots = isolate_roots(q, width, avoid);
  if (roots.empty()) {
    SetExpr s = q(Rational(0)) >= 0 ? SetExpr::real_line() : SetExpr::empty();
    return {s, s, 0};
  }
  // sample the sign between consecutive enclosures
  std::vector<Rational> sample;
  Rational far = 1;
  for (const auto& r : roots) far = max_of(far, max_of(abs_value(r.lo), abs_value(r.hi)));
  far += 1;
  sample.push_back(-far);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) sample.push_back((roots[i].hi + roots[i + 1].lo) / 2);
  sample.push_back(far);
  std::vector<SetExpr> inner, outer;
  Rational gap = 0;
  for (const auto& r : roots) gap += r.hi - r.lo;
  // region i lies between root i-1 and root i
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (q(sample[i]) < 0) continue;
    Endpoint lo_in = i == 0 ? Endpoint::unbounded() : Endpoint::closed(roots[i - 1].hi);
    Endpoint lo_out = i == 0 ? Endpoint::unbounded() : Endpoint::closed(roots[i - 1].lo);
    Endpoint hi_in = i + 1 == sample.size() ? Endpoint::unbounded() : Endpoint::closed(roots[i].lo);
    Endpoint hi_out = i + 1 == sample.size() ? Endpoint::unbounded() : Endpoint::closed(roots[i].hi);
    inner.push_back(SetExpr::interval(Interval(lo_in, hi_in)));
    outer.push_back(SetExpr::interval(Interval(lo_out, hi_out)));
  }
  // isolated roots where q touches zero from below also belong to the set
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!roots[i].exact()) continue;
    bool left_neg = q(sample[i]) < 0, right_neg = q(sample[i + 1]) < 0;
    if (left_neg && right_neg) {
      inner.push_back(SetExpr::points({roots[i].lo}));
      outer.push_back(SetExpr::points({roots[i].lo}));
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].exact()) continue;
    bool left_neg = q(sample[i]) < 0, right_neg = q(sample[i + 1]) < 0;
    if (left_neg && right_neg) outer.push_back(SetExpr::interval(Interval::closed(roots[i].lo, roots[i].hi)));
  }
  return {normalize(union_of(inner)), normalize(union_of(outer)), gap};
}

}  // namespace detail

inline Rational default_root_width() { return power_of_two(-20); }

/// {x : |p(x) - L| >= eps} as a sandwich of interval unions.
inline SandwichSet isolate_superlevel(const Poly& p, const Rational& L, const Rational& eps,
                                      const Rational& width = default_root_width(),
                                      std::span<const Rational> avoid = {}) {
  if (eps <= 0) throw RangeError("epsilon must be positive");
  Poly q = p - Poly::constant(L);
  auto up = detail::nonnegative_set(q - Poly::constant(eps), width, avoid);
  auto down = detail::nonnegative_set(-q - Poly::constant(eps), width, avoid);
  return {normalize(up.inner | down.inner), normalize(up.outer | down.outer), up.gap + down.gap};
}

/// The exceptional set {x in window ∩ domain : |f(x) - L| >= eps}.
inline SandwichSet exceptional_set(const PiecewiseFn& f, const Rational& a, const Rational& L, const Rational& delta,
                                   const Rational& eps) {
  if (delta <= 0 || eps <= 0) throw RangeError("delta and epsilon must be positive");
  SetExpr window = SetExpr::punctured_window(a, delta);
  std::vector<Rational> avoid{a, a - delta, a + delta};
  auto guards = f.effective_guards();
  auto vals = f.values();
  std::vector<SetExpr> inner, outer;
  Rational gap = 0;
  for (std::size_t i = 0; i < guards.size(); ++i) {
    auto s = isolate_superlevel(vals[i], L, eps, default_root_width(), avoid);
    if (detail::set_is_empty(s.outer)) continue;
    SetExpr local = guards[i] & f.domain & window;
    inner.push_back(local & s.inner);
    outer.push_back(local & s.outer);
    gap += s.gap;
  }
  return {normalize(union_of(inner)), normalize(union_of(outer)), gap};
}

}  // namespace limitlab
