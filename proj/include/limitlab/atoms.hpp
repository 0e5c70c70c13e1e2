#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "limitlab/cantor.hpp"
#include "limitlab/closed_form.hpp"
#include "limitlab/errors.hpp"
#include "limitlab/interval.hpp"

namespace limitlab {

/// Certified enclosure [lo, hi] of a real quantity.
struct Bounds {
  Rational lo = 0;
  Rational hi = 0;
  bool exact() const { return lo == hi; }
};

namespace detail {

// First index >= from at which term(n) - x has the given strict sign for
// every later n. Requires the eventual sign of term - x to be `sign`.
inline unsigned long index_with_sign_from(const ClosedFormTerm& term, const Rational& x, int sign,
                                          unsigned long from) {
  EventualSign e = (term - x).eventual_sign(from);
  if (e.sign != sign) throw RangeError("closed-form term does not settle on the expected side");
  return std::max(e.from, from);
}

// Smallest n in [lo, inf) with pred(n) true, assuming pred is monotone
// (false ... false true true ...) and eventually true.
template <class Pred>
unsigned long first_true(unsigned long lo, Pred pred) {
  if (pred(lo)) return lo;
  unsigned long step = 1, hi = lo + 1;
  while (!pred(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    if (step > (1ul << 60)) throw RangeError("index search diverged");
  }
  while (hi - lo > 1) {
    unsigned long mid = lo + (hi - lo) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace detail

/// {term(n) : n >= start}.
class SequenceAtom {
public:
  SequenceAtom(ClosedFormTerm term, unsigned long start) : term_(std::move(term)), start_(std::max(start, 1ul)) {
    limit_ = term_.limit();
    EventualSign side = (term_ - limit_).eventual_sign(start_);
    side_ = side.sign;
    ordered_from_ = side.from;
    if (side_ != 0) {
      // strictly monotone towards the limit from some index on
      ClosedFormTerm step = term_ - term_.shifted(1);
      EventualSign mono = step.eventual_sign(start_);
      if (mono.sign != side_) throw RangeError("sequence does not settle monotonically");
      ordered_from_ = std::max(ordered_from_, mono.from);
    }
  }

  const ClosedFormTerm& term() const { return term_; }
  unsigned long start() const { return start_; }
  const Rational& limit() const { return limit_; }
  /// +1: terms eventually above the limit, -1: below, 0: eventually equal.
  int side() const { return side_; }
  /// From this index on the terms are strictly monotone (or constant).
  unsigned long ordered_from() const { return ordered_from_; }

  bool contains(const Rational& x) const {
    for (unsigned long n = start_; n < ordered_from_; ++n)
      if (term_.compare_at(n, x) == 0) return true;
    if (side_ == 0) return x == limit_;
    if (sgn(x - limit_) != side_) return false;
    if (side_ * term_.compare_at(ordered_from_, x) < 0) return false;
    // first index whose term is on the limit side of x (or equal)
    unsigned long n = detail::first_true(ordered_from_, [&](unsigned long k) { return side_ * term_.compare_at(k, x) <= 0; });
    return term_.compare_at(n, x) == 0;
  }

  /// Index from which every term lies strictly between the limit and c,
  /// where c is on the approach side of the limit.
  unsigned long tail_start_within(const Rational& c) const {
    return detail::index_with_sign_from(term_, c, -side_, ordered_from_);
  }

  bool operator==(const SequenceAtom& o) const { return term_ == o.term_ && start_ == o.start_; }

private:
  ClosedFormTerm term_;
  unsigned long start_;
  Rational limit_;
  int side_ = 0;
  unsigned long ordered_from_ = 1;
};

/// Union over n >= start of the intervals between lo(n) and hi(n), with
/// the given endpoint inclusion (default [lo, hi)).
class FamilyAtom {
public:
  enum class Tail { Gapped, Contiguous, Overlapping };

  FamilyAtom(ClosedFormTerm lo, ClosedFormTerm hi, bool lo_included, bool hi_included, unsigned long start)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_inc_(lo_included), hi_inc_(hi_included),
        start_(std::max(start, 1ul)) {
    if (lo_.limit() != hi_.limit())
      throw RangeError("interval family members must shrink to a point (lo and hi need the same limit)");
    limit_ = hi_.limit();
    width_ = hi_ - lo_;
    EventualSign w = width_.eventual_sign(start_);
    if (w.sign <= 0) throw RangeError("interval family widths must be eventually positive");
    for (unsigned long n = start_; n < w.from; ++n)
      if (width_.compare_at(n, 0) < 0) throw RangeError("interval family has lo(n) > hi(n) at n = " + std::to_string(n));
    EventualSign slo = (lo_ - limit_).eventual_sign(start_);
    EventualSign shi = (hi_ - limit_).eventual_sign(start_);
    if (slo.sign > 0 && shi.sign > 0)
      side_ = 1;
    else if (slo.sign < 0 && shi.sign < 0)
      side_ = -1;
    else
      throw RangeError("interval family members must approach their limit from one side");
    ClosedFormTerm gap = side_ > 0 ? lo_ - hi_.shifted(1) : lo_.shifted(1) - hi_;
    EventualSign g = gap.eventual_sign(start_);
    ordered_from_ = std::max({w.from, slo.from, shi.from, g.from});
    if (g.sign > 0) {
      tail_ = Tail::Gapped;
    } else if (g.sign == 0) {
      if (!lo_inc_ && !hi_inc_) throw RangeError("touching open family members leave isolated holes");
      tail_ = Tail::Contiguous;
    } else {
      tail_ = Tail::Overlapping;
    }
  }

  const ClosedFormTerm& lo() const { return lo_; }
  const ClosedFormTerm& hi() const { return hi_; }
  bool lo_included() const { return lo_inc_; }
  bool hi_included() const { return hi_inc_; }
  unsigned long start() const { return start_; }
  const Rational& limit() const { return limit_; }
  /// +1 when members sit to the right of the limit, -1 to the left.
  int side() const { return side_; }
  Tail tail() const { return tail_; }
  /// From here on members are disjoint, ordered towards the limit, have
  /// positive width and sit strictly on side().
  unsigned long ordered_from() const { return ordered_from_; }
  const ClosedFormTerm& width() const { return width_; }

  Interval member(unsigned long n) const {
    return Interval(Endpoint{lo_(n), false, lo_inc_}, Endpoint{hi_(n), false, hi_inc_});
  }

  bool in_member(unsigned long n, const Rational& x) const {
    int a = lo_.compare_at(n, x);
    int b = hi_.compare_at(n, x);
    return (a < 0 || (a == 0 && lo_inc_)) && (b > 0 || (b == 0 && hi_inc_));
  }

  /// For non-gapped tails: the interval covered by members >= ordered_from().
  Interval tail_hull() const {
    unsigned long n0 = ordered_from_;
    if (side_ > 0) {
      Rational top = hi_(n0);
      unsigned long stop = detail::index_with_sign_from(hi_, top, -1, n0 + 1);
      for (unsigned long n = n0 + 1; n < stop; ++n) top = max_of(top, hi_(n));
      return Interval(Endpoint::open(limit_), Endpoint{top, false, hi_inc_});
    }
    Rational bottom = lo_(n0);
    unsigned long stop = detail::index_with_sign_from(lo_, bottom, 1, n0 + 1);
    for (unsigned long n = n0 + 1; n < stop; ++n) bottom = min_of(bottom, lo_(n));
    return Interval(Endpoint{bottom, false, lo_inc_}, Endpoint::open(limit_));
  }

  bool contains(const Rational& x) const {
    for (unsigned long n = start_; n < ordered_from_; ++n)
      if (in_member(n, x)) return true;
    if (tail_ != Tail::Gapped) return tail_hull().contains(x);
    if (sgn(x - limit_) != side_) return false;
    unsigned long n0 = ordered_from_;
    // members march towards the limit: find the first whose near edge is
    // on the limit side of x
    const ClosedFormTerm& near = side_ > 0 ? lo_ : hi_;
    auto passed = [&](unsigned long k) { return side_ * near.compare_at(k, x) <= 0; };
    return in_member(detail::first_true(n0, passed), x);
  }

  /// Index from which every member lies strictly between the limit and c
  /// (c on the approach side of the limit).
  unsigned long tail_start_within(const Rational& c) const {
    const ClosedFormTerm& far = side_ > 0 ? hi_ : lo_;
    return detail::index_with_sign_from(far, c, -side_, ordered_from_);
  }

  /// Total width of members n >= from (from >= ordered_from()). Exact for
  /// purely geometric widths; otherwise certified bounds refined `rounds`
  /// times, each round at least halving the enclosure.
  Bounds tail_width_sum(unsigned long from, unsigned rounds) const {
    from = std::max(from, ordered_from_);
    for (const auto& m : width_.monomials())
      if (m.kind == Monomial::Kind::Geometric && from + (16ul << 16) > kExactIndexLimit)
        throw RangeError("family tail index too large for exact evaluation");
    if (width_.is_geometric_only()) {
      Rational s = 0;
      for (const auto& m : width_.monomials())
        if (m.kind == Monomial::Kind::Geometric) s += m.coef * pow(m.ratio, from) / (1 - m.ratio);
      return {s, s};
    }
    for (const auto& m : width_.monomials())
      if (m.kind == Monomial::Kind::InversePower && m.power < 2)
        throw RangeError("interval family widths are not summable");
    Bounds best{0, 0};
    unsigned long count = 16;
    for (unsigned r = 0; r <= rounds; ++r, count *= 2) {
      unsigned long stop = from + count;
      Rational lo = 0, hi = 0;
      for (unsigned long n = from; n < stop; ++n) {
        Rational w = width_(n);
        lo = round_down(lo + w, 192);
        hi = round_up(hi + w, 192);
      }
      for (const auto& m : width_.monomials()) {
        Rational l, u;
        if (m.kind == Monomial::Kind::Geometric) {
          l = u = m.coef * pow(m.ratio, stop) / (1 - m.ratio);
        } else if (m.kind == Monomial::Kind::InversePower) {
          Rational base(static_cast<long>(stop + m.shift));
          Rational integral = Rational(1) / (Rational(static_cast<long>(m.power - 1)) * pow(base, m.power - 1));
          Rational first = Rational(1) / pow(base, m.power);
          l = integral;
          u = integral + first;
          if (m.coef < 0) std::swap(l, u);
          l *= m.coef;
          u *= m.coef;
        }
        lo += l;
        hi += u;
      }
      best = {max_of(lo, Rational(0)), hi};
      if (best.hi - best.lo <= power_of_two(-40) || count > (1ul << 16)) break;
    }
    return best;
  }

  bool operator==(const FamilyAtom& o) const {
    return lo_ == o.lo_ && hi_ == o.hi_ && lo_inc_ == o.lo_inc_ && hi_inc_ == o.hi_inc_ && start_ == o.start_;
  }

private:
  ClosedFormTerm lo_, hi_;
  bool lo_inc_, hi_inc_;
  unsigned long start_;
  Rational limit_;
  ClosedFormTerm width_;
  int side_ = 1;
  Tail tail_ = Tail::Gapped;
  unsigned long ordered_from_ = 1;
};

struct EmptyAtom {
  bool operator==(const EmptyAtom&) const { return true; }
};
struct IntervalAtom {
  Interval interval;
  bool operator==(const IntervalAtom& o) const { return interval == o.interval; }
};
struct PointsAtom {
  std::vector<Rational> points;  // sorted, distinct
  bool operator==(const PointsAtom& o) const { return points == o.points; }
};
/// Q intersected with an interval.
struct RationalsAtom {
  Interval interval;
  bool operator==(const RationalsAtom& o) const { return interval == o.interval; }
};
struct CantorAtom {
  CantorMap map;
  bool operator==(const CantorAtom& o) const { return map == o.map; }
};

using SetAtom = std::variant<EmptyAtom, IntervalAtom, PointsAtom, RationalsAtom, CantorAtom, SequenceAtom, FamilyAtom>;

inline PointsAtom make_points(std::vector<Rational> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PointsAtom{std::move(pts)};
}

inline bool atom_contains(const SetAtom& atom, const Rational& x) {
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, EmptyAtom>) return false;
        else if constexpr (std::is_same_v<T, IntervalAtom> || std::is_same_v<T, RationalsAtom>)
          return a.interval.contains(x);
        else if constexpr (std::is_same_v<T, PointsAtom>)
          return std::binary_search(a.points.begin(), a.points.end(), x);
        else if constexpr (std::is_same_v<T, CantorAtom>) return a.map.contains(x);
        else return a.contains(x);
      },
      atom);
}

}  // namespace limitlab
