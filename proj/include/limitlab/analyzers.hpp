#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "limitlab/trace.hpp"

namespace limitlab {

struct CardinalityClass {
  enum class Kind { Empty, Finite, CountablyInfinite, Uncountable };
  Kind kind = Kind::Empty;
  unsigned long count = 0;  // only for Finite

  bool countable() const { return kind != Kind::Uncountable; }
  bool finite() const { return kind == Kind::Empty || kind == Kind::Finite; }
  bool operator==(const CardinalityClass& o) const { return kind == o.kind && count == o.count; }
};

inline std::string to_string(const CardinalityClass& c) {
  switch (c.kind) {
    case CardinalityClass::Kind::Empty: return "Empty";
    case CardinalityClass::Kind::Finite: return "Finite(" + std::to_string(c.count) + ")";
    case CardinalityClass::Kind::CountablyInfinite: return "CountablyInfinite";
    case CardinalityClass::Kind::Uncountable: return "Uncountable";
  }
  return "";
}

/// Lebesgue measure. When certified, the true value lies within
/// value ± bound_gap. `infinite` marks unbounded sets of infinite measure.
struct MeasureValue {
  Rational value = 0;
  bool certified = true;
  Rational bound_gap = 0;
  bool infinite = false;

  bool exact() const { return !infinite && bound_gap == 0; }
  Rational lower() const { return value - bound_gap; }
  Rational upper() const { return value + bound_gap; }
};

struct DensityVerdict {
  enum class Kind { Zero, Positive, Value, Undecided };
  Kind kind = Kind::Zero;
  Rational value = 0;  // lower bound for Positive, exact for Value
  std::string reason;

  bool is_zero() const { return kind == Kind::Zero || (kind == Kind::Value && value == 0); }
  static DensityVerdict zero() { return {}; }
  static DensityVerdict positive(Rational b) { return {Kind::Positive, std::move(b), {}}; }
  static DensityVerdict exact(Rational v) { return {Kind::Value, std::move(v), {}}; }
  static DensityVerdict undecided(std::string why) { return {Kind::Undecided, 0, std::move(why)}; }
};

inline std::string to_string(const DensityVerdict& d) {
  switch (d.kind) {
    case DensityVerdict::Kind::Zero: return "Zero";
    case DensityVerdict::Kind::Positive: return "Positive(>= " + to_string(d.value) + ")";
    case DensityVerdict::Kind::Value: return "Value(" + to_string(d.value) + ")";
    case DensityVerdict::Kind::Undecided: return "Undecided(" + d.reason + ")";
  }
  return "";
}

/// Refinement cap for measure bounds; LIMITLAB_MAX_REFINE overrides it.
inline unsigned max_refine_rounds() {
  if (const char* s = std::getenv("LIMITLAB_MAX_REFINE")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v >= 0) return static_cast<unsigned>(std::min(v, 4096L));
  }
  return 64;
}

namespace detail {

// Positive measure: a proper real interval or a family with proper members.
inline bool is_fat(const Cell& c) {
  if (c.rational_only) return false;
  if (c.is_full()) return c.clip.is_proper();
  return c.is_family();
}

inline bool is_uncountable(const Cell& c) { return is_fat(c) || (c.is_cantor() && !c.rational_only); }

// Canonical cells other than points are infinite.
inline bool is_infinite(const Cell& c) {
  if (c.is_points()) return false;
  if (c.is_full()) return c.clip.is_proper();
  return true;
}

}  // namespace detail

inline CardinalityClass cardinality(const NormalForm& nf) {
  bool infinite = false;
  std::set<Rational> pts;
  for (const auto& p : nf.pieces) {
    if (detail::is_uncountable(p.base)) return {CardinalityClass::Kind::Uncountable, 0};
    if (detail::is_infinite(p.base)) infinite = true;
    else if (p.base.is_points()) pts.insert(p.base.points().begin(), p.base.points().end());
  }
  if (infinite) return {CardinalityClass::Kind::CountablyInfinite, 0};
  if (pts.empty()) return {CardinalityClass::Kind::Empty, 0};
  return {CardinalityClass::Kind::Finite, pts.size()};
}

inline CardinalityClass cardinality(const LocalTrace& t) { return cardinality(t.parts); }

/// True iff the trace has no accumulation point in R. Every non-point
/// piece of a canonical trace is infinite and bounded, hence accumulates
/// somewhere (its limit, or any point of an interval, or of the Cantor set).
inline bool has_no_accumulation_point(const LocalTrace& t) {
  for (const auto& p : t.parts.pieces) {
    const Cell& c = p.base;
    if (c.is_points()) continue;
    if (c.is_full() && !c.clip.is_proper()) continue;
    return false;
  }
  return true;
}

namespace detail {

struct TailKey {
  Rational limit;
  int side;
  bool operator<(const TailKey& o) const { return limit != o.limit ? limit < o.limit : side < o.side; }
};

struct RegionInfo {
  std::optional<FamilyAtom> family;
  bool covered = false;
  bool has_family_piece = false;
  bool has_family_hole = false;
  Rational eta = 1;
  unsigned long stop = 0;
};

inline Interval region_of(const TailKey& k, const Rational& eta) {
  return k.side > 0 ? Interval::open(k.limit, k.limit + eta) : Interval::open(k.limit - eta, k.limit);
}

inline std::vector<Interval> subtract_all(std::vector<Interval> from, const std::vector<Interval>& cut) {
  for (const auto& c : cut) {
    std::vector<Interval> next;
    for (const auto& x : from) {
      auto s = x.subtract(c);
      next.insert(next.end(), s.begin(), s.end());
    }
    from = std::move(next);
  }
  return from;
}

}  // namespace detail

/// Measure of a normal form. Null parts are dropped; family tails are
/// summed in closed form (geometric widths) or enclosed by certified bounds.
inline MeasureValue measure(const NormalForm& nf, unsigned rounds = max_refine_rounds()) {
  using detail::TailKey;
  struct Fat {
    Cell base;
    std::optional<Cell> family_hole;
  };
  std::vector<Fat> fat;
  for (const auto& p : nf.pieces) {
    if (!detail::is_fat(p.base)) continue;
    Fat f{p.base, std::nullopt};
    for (const auto& h : p.holes)
      if (h.is_family() && !h.rational_only) f.family_hole = h;
    if (p.base.is_full() && !p.base.clip.bounded()) return MeasureValue{0, true, 0, true};
    fat.push_back(std::move(f));
  }

  std::map<TailKey, detail::RegionInfo> regions;
  auto family_of = [](const Fat& f) -> const FamilyAtom* {
    if (f.base.is_family()) return &f.base.family();
    if (f.family_hole) return &f.family_hole->family();
    return nullptr;
  };
  for (const auto& f : fat) {
    const FamilyAtom* fam = family_of(f);
    if (!fam) continue;
    auto& r = regions[TailKey{fam->limit(), fam->side()}];
    if (r.family && !(*r.family == *fam))
      throw UnsupportedIntersection("measure of two different interval families accumulating at one point");
    r.family = *fam;
  }

  // static endpoints: clips and the unordered prefixes of the families
  std::vector<Rational> ends;
  auto add_iv = [&](const Interval& iv) {
    if (!iv.lo().infinite) ends.push_back(iv.lo().value);
    if (!iv.hi().infinite) ends.push_back(iv.hi().value);
  };
  for (const auto& f : fat) {
    add_iv(f.base.clip);
    if (f.family_hole) add_iv(f.family_hole->clip);
  }
  for (auto& [k, r] : regions) {
    const FamilyAtom& fam = *r.family;
    for (unsigned long n = fam.start(); n < fam.ordered_from(); ++n) add_iv(fam.member(n));
  }
  Rational eta0 = 1;
  for (auto& [k, r] : regions) {
    for (const auto& e : ends)
      if (e != k.limit) eta0 = min_of(eta0, abs_value(e - k.limit));
    for (auto& [k2, r2] : regions)
      if (k2.limit != k.limit) eta0 = min_of(eta0, abs_value(k2.limit - k.limit) / 3);
  }
  // members of other families still outside their own region
  for (auto& [k, r] : regions) {
    r.eta = eta0;
    for (auto& [k2, r2] : regions) {
      if (k2.limit == k.limit) continue;
      const FamilyAtom& g = *r2.family;
      unsigned long stop = g.tail_start_within(k2.limit + k2.side * eta0);
      detail::check_materialize(g.ordered_from(), stop);
      for (unsigned long n = g.ordered_from(); n < stop; ++n) {
        Interval m = g.member(n);
        for (const Endpoint* e : {&m.lo(), &m.hi()}) r.eta = min_of(r.eta, abs_value(e->value - k.limit));
      }
    }
    r.stop = r.family->tail_start_within(k.limit + k.side * r.eta);
  }
  std::vector<Interval> region_ivs;
  for (auto& [k, r] : regions) region_ivs.push_back(detail::region_of(k, r.eta));

  // outside the regions everything is a finite union of intervals
  std::vector<Interval> outside;
  for (const auto& f : fat) {
    std::vector<Interval> parts;
    if (f.base.is_full()) {
      parts.push_back(f.base.clip);
      if (f.family_hole) {
        const FamilyAtom& fam = f.family_hole->family();
        auto k = regions.find(TailKey{fam.limit(), fam.side()});
        parts = detail::subtract_all(parts, detail::family_members(fam, fam.start(), k->second.stop, f.family_hole->clip));
      }
    } else {
      const FamilyAtom& fam = f.base.family();
      auto k = regions.find(TailKey{fam.limit(), fam.side()});
      parts = detail::family_members(fam, fam.start(), k->second.stop, f.base.clip);
    }
    parts = detail::subtract_all(parts, region_ivs);
    outside.insert(outside.end(), parts.begin(), parts.end());
  }
  Rational lo = total_length(merge_intervals(outside));
  Rational hi = lo;

  for (auto& [k, r] : regions) {
    Interval reg = detail::region_of(k, r.eta);
    for (const auto& f : fat) {
      if (f.base.is_full() && !f.family_hole && reg.subset_of(f.base.clip)) r.covered = true;
      if (f.base.is_family() && reg.subset_of(f.base.clip)) r.has_family_piece = true;
      if (f.family_hole && reg.subset_of(f.base.clip)) r.has_family_hole = true;
    }
    if (r.covered || (r.has_family_piece && r.has_family_hole)) {
      lo += r.eta;
      hi += r.eta;
      continue;
    }
    const FamilyAtom& fam = *r.family;
    Rational inner = total_length(detail::family_members(fam, fam.ordered_from(), r.stop, reg));
    Bounds tail = fam.tail_width_sum(r.stop, rounds);
    if (r.has_family_piece) {
      lo += inner + tail.lo;
      hi += inner + tail.hi;
    } else if (r.has_family_hole) {
      lo += r.eta - inner - tail.hi;
      hi += r.eta - inner - tail.lo;
    }
  }
  if (lo < 0) lo = 0;
  MeasureValue mv;
  mv.value = (lo + hi) / 2;
  mv.bound_gap = (hi - lo) / 2;
  return mv;
}

inline MeasureValue measure(const SetExpr& e) { return measure(normal_form(e)); }

/// Certified sign of the measure: true iff strictly positive.
inline bool has_positive_measure(const NormalForm& nf) {
  for (const auto& p : nf.pieces)
    if (detail::is_fat(p.base)) return true;
  return false;
}

/// Density of the members of a family at its own limit.
inline DensityVerdict family_density(const FamilyAtom& f) {
  ClosedFormTerm dist = f.side() > 0 ? f.hi() - f.limit() : ClosedFormTerm::constant(f.limit()) - f.lo();
  Asymptotic d = dist.leading_behavior();
  Asymptotic w = f.width().leading_behavior();
  using K = Asymptotic::Kind;
  if (d.kind == K::InversePower && w.kind == K::Geometric) return DensityVerdict::zero();
  if (d.kind == K::InversePower && w.kind == K::InversePower) {
    if (w.power > d.power + 1) return DensityVerdict::zero();
    // one member is o(delta) here, so the one-sided ratio converges
    if (w.power == d.power + 1)
      return DensityVerdict::exact(w.coef / (2 * Rational(static_cast<long>(d.power)) * d.coef));
  }
  if (d.kind == K::Geometric && w.kind == K::Geometric) {
    if (w.ratio < d.ratio) return DensityVerdict::zero();
    // the ratio oscillates between the liminf below and the same value
    // divided by the ratio
    if (w.ratio == d.ratio) return DensityVerdict::positive(w.coef * w.ratio / (2 * (1 - w.ratio) * d.coef));
  }
  throw UndecidableDensity("family member asymptotics outside the density rule table");
}

// Ratio r of a family whose distances and widths are both geometric in r.
inline Rational family_density_ratio(const FamilyAtom& f) { return f.width().leading_behavior().ratio; }

/// Density of the set at a, read off the trace at the stable radius.
inline DensityVerdict density_at(const NormalForm& nf, const Rational& a) {
  Rational r = stable_radius(nf, a);
  NormalForm w = normal_form(SetExpr::punctured_window(a, r));
  std::vector<Piece> local;
  for (const auto& p : nf.pieces)
    for (const auto& q : w.pieces) {
      auto part = detail::intersect_pieces(p, q);
      local.insert(local.end(), part.begin(), part.end());
    }
  Rational exact = 0;
  std::optional<Rational> positive;
  for (int side : {-1, 1}) {
    Interval half = side > 0 ? Interval::open(a, a + r) : Interval::open(a - r, a);
    bool covered = false;
    std::optional<FamilyAtom> fam_piece, fam_hole;
    for (const auto& p : local) {
      if (!detail::is_fat(p.base) || !p.base.clip.subset_of(half)) continue;
      std::optional<FamilyAtom> hole;
      for (const auto& h : p.holes)
        if (h.is_family() && !h.rational_only) hole = h.family();
      if (p.base.is_full() && !hole) covered = true;
      else if (p.base.is_full()) fam_hole = hole;
      else fam_piece = p.base.family();
    }
    if (fam_piece && fam_hole && !(*fam_piece == *fam_hole))
      throw UnsupportedIntersection("density with two different interval families at one point");
    if (covered || (fam_piece && fam_hole)) {
      exact += Rational(1, 2);
    } else if (fam_piece) {
      DensityVerdict d = family_density(*fam_piece);
      if (d.kind == DensityVerdict::Kind::Positive) positive = positive.value_or(0) + d.value;
      if (d.kind == DensityVerdict::Kind::Value) exact += d.value;
    } else if (fam_hole) {
      DensityVerdict d = family_density(*fam_hole);
      if (d.kind == DensityVerdict::Kind::Positive) {
        // the complement keeps at least 1/2 minus the upper density
        Rational upper = d.value / family_density_ratio(*fam_hole);
        if (upper >= Rational(1, 2)) return DensityVerdict::undecided("complement of a dense interval family");
        positive = positive.value_or(0) + Rational(1, 2) - upper;
      } else {
        exact += Rational(1, 2) - d.value;
      }
    }
  }
  if (positive) return DensityVerdict::positive(*positive + exact);
  if (exact == 0) return DensityVerdict::zero();
  return DensityVerdict::exact(exact);
}

inline DensityVerdict density_at(const SetExpr& e, const Rational& a) { return density_at(normal_form(e), a); }

}  // namespace limitlab
