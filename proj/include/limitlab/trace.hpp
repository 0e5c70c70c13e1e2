#pragma once

#include <vector>

#include "limitlab/normal_form.hpp"

namespace limitlab {

/// expr ∩ ((a - delta, a + delta) \ {a}) in normal form. Family members
/// that are not yet deep inside the window are enumerated; the remaining
/// tail stays symbolic.
struct LocalTrace {
  Rational center;
  Rational radius;
  NormalForm parts;

  /// Disjoint, sorted, maximal interval pieces.
  std::vector<Interval> intervals() const {
    std::vector<Interval> out;
    for (const auto& p : parts.pieces)
      if (p.base.is_full() && !p.base.rational_only && p.holes.empty()) out.push_back(p.base.clip);
    return merge_intervals(std::move(out));
  }
  /// Everything that is not a plain interval piece.
  std::vector<Piece> residual() const {
    std::vector<Piece> out;
    for (const auto& p : parts.pieces)
      if (!(p.base.is_full() && !p.base.rational_only && p.holes.empty())) out.push_back(p);
    return out;
  }
  bool contains(const Rational& x) const { return parts.contains(x); }
};

namespace detail {

// Split of a family inside a clip that accumulates at its limit: finitely
// many members to enumerate and a tail disjoint from them.
struct FamilySplit {
  std::vector<Interval> members;
  FamilyAtom tail;
};

inline FamilySplit split_family(const FamilyAtom& f, const Interval& clip) {
  const Rational& l = f.limit();
  Rational eta = 1;
  auto consider = [&](const Endpoint& e) {
    if (!e.infinite && e.value != l) eta = min_of(eta, abs_value(e.value - l));
  };
  consider(clip.lo());
  consider(clip.hi());
  for (unsigned long n = f.start(); n < f.ordered_from(); ++n) {
    Interval m = f.member(n);
    consider(m.lo());
    consider(m.hi());
  }
  unsigned long stop = f.tail_start_within(l + f.side() * eta);
  FamilyAtom tail(f.lo(), f.hi(), f.lo_included(), f.hi_included(), stop);
  return {family_members(f, f.start(), stop, clip), tail};
}

inline std::vector<Piece> split_piece_tails(const Piece& p) {
  std::vector<Cell> holes;
  for (const auto& h : p.holes) {
    if (!h.is_family()) {
      holes.push_back(h);
      continue;
    }
    auto s = split_family(h.family(), h.clip);
    for (const auto& iv : s.members) holes.push_back(Cell::full(iv, h.rational_only));
    holes.push_back(Cell{s.tail, h.clip, h.rational_only});
  }
  if (!p.base.is_family()) return make_pieces(p.base, holes);
  auto s = split_family(p.base.family(), p.base.clip);
  std::vector<Piece> out;
  for (const auto& iv : s.members) {
    auto part = make_pieces(Cell::full(iv, p.base.rational_only), holes);
    out.insert(out.end(), part.begin(), part.end());
  }
  auto part = make_pieces(Cell{s.tail, p.base.clip, p.base.rational_only}, holes);
  out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace detail

inline LocalTrace window_trace(const NormalForm& nf, const Rational& a, const Rational& delta) {
  if (delta <= 0) throw RangeError("window radius must be positive");
  NormalForm w = normal_form(SetExpr::punctured_window(a, delta));
  std::vector<Piece> clipped;
  for (const auto& p : nf.pieces)
    for (const auto& q : w.pieces) {
      auto part = detail::intersect_pieces(p, q);
      clipped.insert(clipped.end(), part.begin(), part.end());
    }
  std::vector<Piece> out;
  for (const auto& p : clipped) {
    auto part = detail::split_piece_tails(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return LocalTrace{a, delta, canonicalize(std::move(out))};
}

inline LocalTrace window_trace(const SetExpr& e, const Rational& a, const Rational& delta) {
  return window_trace(normal_form(e), a, delta);
}

namespace detail {

struct RadiusBound {
  Rational a;
  Rational best = 1;
  void point(const Rational& x) {
    if (x != a) best = min_of(best, abs_value(x - a));
  }
  void endpoint(const Endpoint& e) {
    if (!e.infinite) point(e.value);
  }
  void interval(const Interval& iv) {
    endpoint(iv.lo());
    endpoint(iv.hi());
  }
  void radius(const Rational& r) { best = min_of(best, r); }

  void cell(const Cell& c) {
    interval(c.clip);
    if (c.is_points()) {
      for (const auto& x : c.points()) point(x);
    } else if (c.is_cantor()) {
      for (int side : {-1, 1})
        if (!cantor_accumulates(c.cantor(), a, side)) radius(cantor_gap_radius(c.cantor(), a, side));
    } else if (c.is_sequence()) {
      const SequenceAtom& s = c.sequence();
      unsigned long stop = s.ordered_from();
      if (s.limit() != a) {
        Rational h = abs_value(s.limit() - a) / 2;
        radius(h);
        point(s.limit());
        if (s.side() != 0) stop = s.tail_start_within(s.limit() + s.side() * h);
      }
      check_materialize(s.start(), stop);
      for (unsigned long n = s.start(); n < stop; ++n) point(s.term()(n));
    } else if (c.is_family()) {
      const FamilyAtom& f = c.family();
      unsigned long stop = f.ordered_from();
      if (f.limit() != a) {
        Rational h = abs_value(f.limit() - a) / 2;
        radius(h);
        point(f.limit());
        stop = f.tail_start_within(f.limit() + f.side() * h);
      }
      check_materialize(f.start(), stop);
      for (unsigned long n = f.start(); n < stop; ++n) interval(f.member(n));
    }
  }
};

}  // namespace detail

/// A radius delta* in (0, 1] such that every window trace with radius
/// delta <= delta* has the same local structure: no clip endpoint, point,
/// enumerated member or Cantor gap edge lies inside the punctured window.
/// Subset-closed properties of the trace are then constant on (0, delta*].
inline Rational stable_radius(const NormalForm& nf, const Rational& a) {
  detail::RadiusBound rb{a};
  for (const auto& p : nf.pieces) {
    rb.cell(p.base);
    for (const auto& h : p.holes) rb.cell(h);
  }
  return rb.best;
}

inline Rational stable_radius(const SetExpr& e, const Rational& a) { return stable_radius(normal_form(e), a); }

}  // namespace limitlab
