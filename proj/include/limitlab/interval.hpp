#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/rational.hpp"

namespace limitlab {

/// Interval endpoint: a rational value or an infinity. Infinite endpoints
/// are always open.
struct Endpoint {
  Rational value = 0;
  bool infinite = false;
  bool included = false;

  static Endpoint closed(Rational v) { return {std::move(v), false, true}; }
  static Endpoint open(Rational v) { return {std::move(v), false, false}; }
  static Endpoint unbounded() { return {Rational(0), true, false}; }

  bool operator==(const Endpoint& o) const {
    if (infinite || o.infinite) return infinite == o.infinite;
    return value == o.value && included == o.included;
  }
};

/// Interval with rational or infinite endpoints. lo.infinite means -inf,
/// hi.infinite means +inf.
class Interval {
public:
  Interval() : lo_(Endpoint::unbounded()), hi_(Endpoint::unbounded()) {}
  Interval(Endpoint lo, Endpoint hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.infinite) lo_.included = false;
    if (hi_.infinite) hi_.included = false;
  }

  static Interval real_line() { return {}; }
  static Interval closed(const Rational& a, const Rational& b) { return {Endpoint::closed(a), Endpoint::closed(b)}; }
  static Interval open(const Rational& a, const Rational& b) { return {Endpoint::open(a), Endpoint::open(b)}; }
  static Interval closed_open(const Rational& a, const Rational& b) { return {Endpoint::closed(a), Endpoint::open(b)}; }
  static Interval open_closed(const Rational& a, const Rational& b) { return {Endpoint::open(a), Endpoint::closed(b)}; }
  static Interval point(const Rational& a) { return closed(a, a); }
  static Interval empty() { return open(Rational(0), Rational(0)); }

  const Endpoint& lo() const { return lo_; }
  const Endpoint& hi() const { return hi_; }

  bool is_real_line() const { return lo_.infinite && hi_.infinite; }
  bool bounded() const { return !lo_.infinite && !hi_.infinite; }

  bool is_empty() const {
    if (lo_.infinite || hi_.infinite) return false;
    if (lo_.value < hi_.value) return false;
    if (lo_.value > hi_.value) return true;
    return !(lo_.included && hi_.included);
  }
  bool is_degenerate() const {
    return !lo_.infinite && !hi_.infinite && lo_.value == hi_.value && lo_.included && hi_.included;
  }
  /// Nonempty with positive length.
  bool is_proper() const { return !is_empty() && !is_degenerate(); }

  bool contains(const Rational& x) const {
    if (!lo_.infinite && (x < lo_.value || (x == lo_.value && !lo_.included))) return false;
    if (!hi_.infinite && (x > hi_.value || (x == hi_.value && !hi_.included))) return false;
    return true;
  }

  /// Length of a bounded interval (0 for empty).
  Rational length() const {
    if (is_empty()) return 0;
    return hi_.value - lo_.value;
  }

  Interval intersect(const Interval& o) const {
    return Interval(tighter_lo(lo_, o.lo_), tighter_hi(hi_, o.hi_));
  }

  bool intersects(const Interval& o) const { return !intersect(o).is_empty(); }

  bool subset_of(const Interval& o) const {
    if (is_empty()) return true;
    return intersect(o) == *this;
  }

  /// this \ o as at most two disjoint intervals, empty parts dropped.
  std::vector<Interval> subtract(const Interval& o) const {
    std::vector<Interval> out;
    if (is_empty()) return out;
    if (!intersects(o)) {
      out.push_back(*this);
      return out;
    }
    if (!o.lo_.infinite) {
      Interval left(lo_, Endpoint{o.lo_.value, false, !o.lo_.included});
      left = left.intersect(*this);
      if (!left.is_empty()) out.push_back(left);
    }
    if (!o.hi_.infinite) {
      Interval right(Endpoint{o.hi_.value, false, !o.hi_.included}, hi_);
      right = right.intersect(*this);
      if (!right.is_empty()) out.push_back(right);
    }
    return out;
  }

  /// Union of two intervals if it is an interval.
  std::optional<Interval> merge(const Interval& o) const {
    if (is_empty()) return o;
    if (o.is_empty()) return *this;
    if (!intersects(o) && !touches(o)) return std::nullopt;
    return Interval(looser_lo(lo_, o.lo_), looser_hi(hi_, o.hi_));
  }

  bool operator==(const Interval& o) const {
    if (is_empty() && o.is_empty()) return true;
    return lo_ == o.lo_ && hi_ == o.hi_;
  }
  bool operator!=(const Interval& o) const { return !(*this == o); }

  /// Strict weak order by lower endpoint, then upper endpoint.
  bool operator<(const Interval& o) const {
    int c = compare_lo(lo_, o.lo_);
    if (c != 0) return c < 0;
    return compare_hi(hi_, o.hi_) < 0;
  }

  // <0 if a starts before b.
  static int compare_lo(const Endpoint& a, const Endpoint& b) {
    if (a.infinite || b.infinite) return (a.infinite ? -1 : 0) + (b.infinite ? 1 : 0);
    if (a.value != b.value) return a.value < b.value ? -1 : 1;
    if (a.included == b.included) return 0;
    return a.included ? -1 : 1;
  }
  // <0 if a ends before b.
  static int compare_hi(const Endpoint& a, const Endpoint& b) {
    if (a.infinite || b.infinite) return (a.infinite ? 1 : 0) - (b.infinite ? 1 : 0);
    if (a.value != b.value) return a.value < b.value ? -1 : 1;
    if (a.included == b.included) return 0;
    return a.included ? 1 : -1;
  }

private:
  bool touches(const Interval& o) const {
    auto adjacent = [](const Endpoint& hi, const Endpoint& lo) {
      return !hi.infinite && !lo.infinite && hi.value == lo.value && (hi.included || lo.included);
    };
    return adjacent(hi_, o.lo_) || adjacent(o.hi_, lo_);
  }
  static Endpoint tighter_lo(const Endpoint& a, const Endpoint& b) { return compare_lo(a, b) >= 0 ? a : b; }
  static Endpoint tighter_hi(const Endpoint& a, const Endpoint& b) { return compare_hi(a, b) <= 0 ? a : b; }
  static Endpoint looser_lo(const Endpoint& a, const Endpoint& b) { return compare_lo(a, b) <= 0 ? a : b; }
  static Endpoint looser_hi(const Endpoint& a, const Endpoint& b) { return compare_hi(a, b) >= 0 ? a : b; }

  Endpoint lo_;
  Endpoint hi_;
};

/// Sorts and merges overlapping or touching intervals; drops empties.
inline std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::erase_if(v, [](const Interval& i) { return i.is_empty(); });
  std::sort(v.begin(), v.end());
  std::vector<Interval> out;
  for (auto& iv : v) {
    if (!out.empty()) {
      if (auto m = out.back().merge(iv)) {
        out.back() = *m;
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

inline Rational total_length(const std::vector<Interval>& disjoint) {
  Rational s = 0;
  for (const auto& iv : disjoint) s += iv.length();
  return s;
}

}  // namespace limitlab
