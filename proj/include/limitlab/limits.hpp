#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/funcdsl.hpp"

namespace limitlab {

enum class LimitType { T1, T2, T3, T4, T5, T6 };

inline constexpr std::array<LimitType, 6> kAllTypes{LimitType::T1, LimitType::T3, LimitType::T4,
                                                    LimitType::T5, LimitType::T6, LimitType::T2};

inline std::string to_string(LimitType t) {
  switch (t) {
    case LimitType::T1: return "T1";
    case LimitType::T2: return "T2";
    case LimitType::T3: return "T3";
    case LimitType::T4: return "T4";
    case LimitType::T5: return "T5";
    case LimitType::T6: return "T6";
  }
  return "";
}

inline std::optional<LimitType> parse_limit_type(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "t1") return LimitType::T1;
  if (s == "t2") return LimitType::T2;
  if (s == "t3") return LimitType::T3;
  if (s == "t4") return LimitType::T4;
  if (s == "t5") return LimitType::T5;
  if (s == "t6") return LimitType::T6;
  return std::nullopt;
}

struct WitnessStep {
  Rational eps;
  Rational delta;
};

struct Verdict {
  enum class Status { Pass, Fail, Undecidable };
  Status status = Status::Undecidable;
  std::string reason;                 // Undecidable only
  std::vector<WitnessStep> witness;   // Pass only
  std::string evidence;               // Fail only
  std::optional<Rational> failing_eps;

  bool pass() const { return status == Status::Pass; }
  bool fail() const { return status == Status::Fail; }
};

inline std::string to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Pass: return "pass";
    case Verdict::Status::Fail: return "fail";
    case Verdict::Status::Undecidable: return "undecidable";
  }
  return "";
}

/// Everything check() needs for one (f, a, L): the exceptional set at the
/// lowest epsilon band, evaluated on both sandwich sides at a radius where
/// its local structure is frozen.
struct LocalAnalysis {
  Rational a, L;
  std::vector<Rational> gaps;  // |p_i(a) - L| per effective guard
  Rational lipschitz = 0;      // B: |p_i(x) - p_i(a)| <= B|x - a| for |x - a| <= 1
  Rational eps_rep;            // representative of the lowest band
  Rational delta0;             // radius at which E(eps_rep) is the whole germ
  Rational radius;             // germ-stable radius, <= delta0
  LocalTrace inner, outer;
  Rational sandwich_gap = 0;
  std::string error;           // set when the analysis could not be carried out
};

inline LocalAnalysis analyze_local(const PiecewiseFn& f, const Rational& a, const Rational& L) {
  LocalAnalysis an;
  an.a = a;
  an.L = L;
  std::optional<Rational> g1;
  for (const auto& p : f.values()) {
    Rational g = abs_value(p(a) - L);
    an.gaps.push_back(g);
    if (g > 0 && (!g1 || g < *g1)) g1 = g;
    an.lipschitz = max_of(an.lipschitz, lipschitz_bound(p, a));
  }
  an.eps_rep = g1 ? *g1 / 2 : Rational(1);
  an.delta0 = min_of(Rational(1), an.eps_rep / (an.lipschitz + 1));
  try {
    SandwichSet e = exceptional_set(f, a, L, an.delta0, an.eps_rep);
    NormalForm in = normal_form(e.inner), out = normal_form(e.outer);
    an.sandwich_gap = e.gap;
    an.radius = min_of(an.delta0, min_of(stable_radius(in, a), stable_radius(out, a)));
    an.inner = window_trace(in, a, an.radius);
    an.outer = window_trace(out, a, an.radius);
  } catch (const Error& ex) {
    an.error = ex.what();
  }
  return an;
}

namespace detail {

// Does the trace satisfy the smallness property of type t? Throws
// UndecidableDensity when T2 cannot be decided.
inline bool trace_property(const LocalTrace& tr, LimitType t) {
  switch (t) {
    case LimitType::T1: return tr.parts.empty();
    case LimitType::T3: return cardinality(tr).finite();
    case LimitType::T4: return has_no_accumulation_point(tr);
    case LimitType::T5: return cardinality(tr).countable();
    case LimitType::T6: return !has_positive_measure(tr.parts);
    case LimitType::T2: {
      DensityVerdict d = density_at(tr.parts, tr.center);
      if (d.kind == DensityVerdict::Kind::Undecided) throw UndecidableDensity(d.reason);
      return d.is_zero();
    }
  }
  return false;
}

inline std::string describe(const LocalTrace& tr, LimitType t) {
  switch (t) {
    case LimitType::T1: return tr.parts.empty() ? "empty" : "nonempty";
    case LimitType::T3:
    case LimitType::T5: return to_string(cardinality(tr));
    case LimitType::T4: return has_no_accumulation_point(tr) ? "no accumulation point" : "has accumulation points";
    case LimitType::T6: return has_positive_measure(tr.parts) ? "positive measure" : "measure zero";
    case LimitType::T2: return "density " + to_string(density_at(tr.parts, tr.center));
  }
  return "";
}

inline Rational snap_to_schedule(const Rational& d) {
  for (long k = 0; k <= 64; ++k) {
    Rational s = power_of_two(-k);
    if (s <= d) return s;
  }
  return d;
}

}  // namespace detail

/// Witness delta for a given epsilon, valid once check() passed.
inline Rational witness_delta(const LocalAnalysis& an, const Rational& eps) {
  if (eps >= an.eps_rep) return an.radius;
  return min_of(an.radius, eps / (an.lipschitz + 1));
}

inline Verdict check(const LocalAnalysis& an, LimitType t) {
  Verdict v;
  if (!an.error.empty()) {
    v.reason = an.error;
    return v;
  }
  try {
    bool outer_ok = detail::trace_property(an.outer, t);
    bool inner_ok = detail::trace_property(an.inner, t);
    if (outer_ok) {
      v.status = Verdict::Status::Pass;
      std::vector<Rational> eps{an.eps_rep};
      std::vector<Rational> sorted = an.gaps;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] == 0) continue;
        eps.push_back(sorted[i]);
        if (i + 1 < sorted.size()) eps.push_back((sorted[i] + sorted[i + 1]) / 2);
      }
      eps.push_back((sorted.empty() ? Rational(0) : sorted.back()) + 1);
      eps.push_back(an.eps_rep / 1024);
      std::sort(eps.begin(), eps.end());
      eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
      for (const auto& e : eps) v.witness.push_back({e, detail::snap_to_schedule(witness_delta(an, e))});
    } else if (!inner_ok) {
      v.status = Verdict::Status::Fail;
      v.failing_eps = an.eps_rep;
      v.evidence = "eps = " + to_string(an.eps_rep) + ": exceptional set is " + detail::describe(an.inner, t) +
                   " in every window of radius <= " + to_string(an.radius);
    } else {
      v.reason = "sandwich sides disagree (gap " + to_string(an.sandwich_gap) + ")";
    }
  } catch (const Error& ex) {
    v.status = Verdict::Status::Undecidable;
    v.reason = ex.what();
  }
  return v;
}

inline Verdict check(const PiecewiseFn& f, const Rational& a, const Rational& L, LimitType t) {
  return check(analyze_local(f, a, L), t);
}

inline std::vector<Rational> candidates(const PiecewiseFn& f, const Rational& a) {
  std::vector<Rational> out;
  for (const auto& p : f.values()) {
    Rational v = p(a);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

struct TypeReport {
  enum class Exists { Yes, No, Undecidable };
  Exists exists = Exists::Undecidable;
  std::optional<Rational> value;
  bool every_real = false;  // the germ of the domain itself is small
  std::vector<std::pair<Rational, Verdict>> verdicts;
  std::string reason;
};

inline std::string to_string(TypeReport::Exists e) {
  switch (e) {
    case TypeReport::Exists::Yes: return "yes";
    case TypeReport::Exists::No: return "no";
    case TypeReport::Exists::Undecidable: return "undecidable";
  }
  return "";
}

struct LimitReport {
  Rational a;
  std::vector<std::pair<LimitType, TypeReport>> types;  // in kAllTypes order
  bool chain_consistent = true;

  const TypeReport& at(LimitType t) const {
    for (const auto& [k, r] : types)
      if (k == t) return r;
    throw RangeError("missing limit type");
  }
  bool decided() const {
    for (const auto& [k, r] : types)
      if (r.exists == TypeReport::Exists::Undecidable) return false;
    return true;
  }
};

namespace detail {

// Stronger type passing must make every weaker type pass with the same L.
inline bool chain_ok(const std::vector<std::pair<LimitType, Verdict::Status>>& row) {
  auto st = [&](LimitType t) {
    for (const auto& [k, s] : row)
      if (k == t) return s;
    return Verdict::Status::Undecidable;
  };
  using S = Verdict::Status;
  auto implies = [&](LimitType a, LimitType b) { return !(st(a) == S::Pass && st(b) == S::Fail); };
  return implies(LimitType::T1, LimitType::T3) && implies(LimitType::T3, LimitType::T1) &&
         implies(LimitType::T1, LimitType::T4) && implies(LimitType::T4, LimitType::T1) &&
         implies(LimitType::T1, LimitType::T5) && implies(LimitType::T5, LimitType::T6) &&
         implies(LimitType::T6, LimitType::T2);
}

}  // namespace detail

/// Runs every type against every candidate. A value that is not a
/// candidate leaves every branch with a positive gap, so its exceptional
/// germ is the germ of the domain: this settles all other reals at once.
inline LimitReport classify(const PiecewiseFn& f, const Rational& a) {
  LimitReport rep;
  rep.a = a;
  auto cands = candidates(f, a);
  Rational other = 1;
  for (const auto& c : cands) other = max_of(other, c + 1);
  std::vector<LocalAnalysis> analyses;
  for (const auto& c : cands) analyses.push_back(analyze_local(f, a, c));
  LocalAnalysis rest = analyze_local(f, a, other);
  for (LimitType t : kAllTypes) {
    TypeReport tr;
    bool any_undecided = false;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      Verdict v = check(analyses[i], t);
      if (v.pass() && !tr.value) tr.value = cands[i];
      if (v.status == Verdict::Status::Undecidable) {
        any_undecided = true;
        tr.reason = v.reason;
      }
      tr.verdicts.emplace_back(cands[i], std::move(v));
    }
    Verdict vr = check(rest, t);
    if (vr.pass()) tr.every_real = true;
    if (vr.status == Verdict::Status::Undecidable) {
      any_undecided = true;
      tr.reason = vr.reason;
    }
    if (tr.value || tr.every_real) {
      tr.exists = TypeReport::Exists::Yes;
      if (!tr.value) tr.value = other;
    } else if (!any_undecided) {
      tr.exists = TypeReport::Exists::No;
    }
    rep.types.emplace_back(t, std::move(tr));
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::vector<std::pair<LimitType, Verdict::Status>> row;
    for (const auto& [t, tr] : rep.types) row.emplace_back(t, tr.verdicts[i].second.status);
    if (!detail::chain_ok(row)) rep.chain_consistent = false;
  }
  return rep;
}

/// T5: every punctured window trace of A at a is uncountable. T6: every
/// such trace has positive measure. Decided on the germ-stable trace.
inline bool uniqueness_precondition(const SetExpr& domain, const Rational& a, LimitType t) {
  if (t != LimitType::T5 && t != LimitType::T6) throw RangeError("uniqueness precondition is defined for T5 and T6");
  NormalForm nf = normal_form(domain);
  LocalTrace tr = window_trace(nf, a, stable_radius(nf, a));
  if (t == LimitType::T5) return cardinality(tr).kind == CardinalityClass::Kind::Uncountable;
  return has_positive_measure(tr.parts);
}

}  // namespace limitlab
