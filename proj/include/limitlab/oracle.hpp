#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "limitlab/analyzers.hpp"

namespace limitlab {

struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  Rational a = 0;
  Rational delta = 1;
};

struct McEstimate {
  double estimate = 0;
  double sigma = 0;
  std::size_t hits = 0;
  std::size_t samples = 0;
  Rational window_length = 0;

  double lower() const { return estimate - 3 * sigma; }
  double upper() const { return estimate + 3 * sigma; }
  /// 3 sigma, floored at one grid step so that a zero-variance run still
  /// has a meaningful tolerance.
  double tolerance() const { return std::max(3 * sigma, window_length.get_d() * std::ldexp(1.0, -30)); }
  bool agrees_with(const Rational& exact) const { return std::fabs(estimate - exact.get_d()) <= tolerance(); }
};

inline constexpr int kSampleGridBits = 40;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sample i is a - delta + 2 delta k / 2^40 with k drawn from splitmix64 of
/// seed + i, so any split of the index range gives the same result.
inline Rational sample_point(const SampleConfig& cfg, std::size_t i) {
  std::uint64_t k = splitmix64(cfg.seed + i) >> (64 - kSampleGridBits);
  Rational u(mpz_class(std::to_string(k)), mpz_class(1) << kSampleGridBits);
  u.canonicalize();
  return cfg.a - cfg.delta + 2 * cfg.delta * u;
}

inline McEstimate mc_measure(const SetExpr& expr, const SampleConfig& cfg) {
  if (cfg.delta <= 0 || cfg.samples == 0) throw RangeError("sampling window and count must be positive");
  NormalForm nf = normal_form(expr);
  McEstimate out;
  out.samples = cfg.samples;
  out.window_length = 2 * cfg.delta;
  for (std::size_t i = 0; i < cfg.samples; ++i)
    if (nf.contains(sample_point(cfg, i))) ++out.hits;
  double n = static_cast<double>(cfg.samples);
  double p = static_cast<double>(out.hits) / n;
  double w = out.window_length.get_d();
  out.estimate = w * p;
  out.sigma = w * std::sqrt(p * (1 - p) / n);
  return out;
}

struct ProfilePoint {
  enum class Source { Exact, Bounds, Sampled, Dominated };
  Rational delta;
  double ratio = 0;
  std::optional<Rational> exact_ratio;
  Source source = Source::Exact;
};

inline std::string to_string(ProfilePoint::Source s) {
  switch (s) {
    case ProfilePoint::Source::Exact: return "exact";
    case ProfilePoint::Source::Bounds: return "bounds";
    case ProfilePoint::Source::Sampled: return "sampled";
    case ProfilePoint::Source::Dominated: return "dominated";
  }
  return "";
}

struct DensityProfile {
  std::vector<ProfilePoint> points;
  bool monotone = true;          // ratios nonincreasing in depth
  std::vector<double> envelope;  // envelope[k] = max of ratios at depth >= k
};

/// |expr ∩ (a - 2^-k, a + 2^-k)| / 2^(1-k) for k = 1..depths.
inline DensityProfile density_profile(const SetExpr& expr, const Rational& a, int depths,
                                      std::uint64_t seed = 0, std::size_t samples = 10000) {
  if (depths < 1 || depths > 40) throw RangeError("depths must lie in 1..40");
  DensityProfile prof;
  // the measure in a smaller window never exceeds the last one computed
  std::optional<Rational> last_upper;
  for (int k = 1; k <= depths; ++k) {
    Rational d = power_of_two(-k);
    SetExpr local = expr & SetExpr::interval(Interval::open(a - d, a + d));
    ProfilePoint pt{d};
    try {
      MeasureValue m = measure(local);
      if (m.infinite) throw RangeError("unbounded");
      Rational r = m.value / (2 * d);
      pt.ratio = r.get_d();
      if (m.exact())
        pt.exact_ratio = r;
      else
        pt.source = ProfilePoint::Source::Bounds;
      last_upper = m.upper();
    } catch (const Error&) {
      try {
        pt.ratio = mc_measure(local, SampleConfig{seed, samples, a, d}).estimate / Rational(2 * d).get_d();
        pt.source = ProfilePoint::Source::Sampled;
      } catch (const Error&) {
        if (!last_upper) throw;
        pt.ratio = Rational(min_of(*last_upper, 2 * d) / (2 * d)).get_d();
        pt.source = ProfilePoint::Source::Dominated;
      }
    }
    prof.points.push_back(pt);
  }
  for (std::size_t i = 1; i < prof.points.size(); ++i)
    if (prof.points[i].ratio > prof.points[i - 1].ratio) prof.monotone = false;
  prof.envelope.resize(prof.points.size());
  double m = 0;
  for (std::size_t i = prof.points.size(); i-- > 0;) {
    m = std::max(m, prof.points[i].ratio);
    prof.envelope[i] = m;
  }
  return prof;
}

}  // namespace limitlab
