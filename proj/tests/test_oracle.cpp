#include <gtest/gtest.h>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

TEST(SplitMix, ReferenceStream) {
  // published outputs of the splitmix64 generator seeded with 0
  const std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(gamma), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(splitmix64(2 * gamma), 0x06c45d188009454fULL);
}

TEST(Sampling, PointsStayInWindowAndAreReproducible) {
  SampleConfig cfg{42, 1000, make_rational(1, 3), make_rational(1, 8)};
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    Rational x = sample_point(cfg, i);
    EXPECT_GE(x, cfg.a - cfg.delta);
    EXPECT_LT(x, cfg.a + cfg.delta);
    EXPECT_EQ(x, sample_point(cfg, i));
  }
}

TEST(Sampling, IntervalEstimateWithinTolerance) {
  SampleConfig cfg{7, 50000, 0, 1};
  McEstimate e = mc_measure(parse_set("[0, 1/2) | [3/4, 2]"), cfg);
  // exact |([0,1/2) ∪ [3/4,2]) ∩ (-1,1)| = 1/2 + 1/4
  EXPECT_TRUE(e.agrees_with(make_rational(3, 4)));
  EXPECT_NEAR(e.estimate, 0.75, 4 * e.sigma + 1e-9);
  EXPECT_EQ(e.window_length, 2);
}

TEST(Sampling, OmegaAgreesWithExactMeasure) {
  SampleConfig cfg{3, 100000, 0, 1};
  McEstimate e = mc_measure(fixtures::omega(), cfg);
  Rational head = oracle::union_length(oracle::omega_members(1, 60));
  EXPECT_LT(std::fabs(e.estimate - head.get_d()), e.tolerance());
}

TEST(Sampling, OracleSuiteMostlyAgrees) {
  auto r = oracle_suite(5, 20, 20000);
  EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes.front());
}

TEST(Profile, IntervalIsExactAndFlat) {
  DensityProfile p = density_profile(parse_set("[0, 1]"), 0, 10);
  ASSERT_EQ(p.points.size(), 10u);
  for (const auto& pt : p.points) {
    EXPECT_EQ(pt.source, ProfilePoint::Source::Exact);
    ASSERT_TRUE(pt.exact_ratio.has_value());
    EXPECT_EQ(*pt.exact_ratio, make_rational(1, 2));
  }
  EXPECT_TRUE(p.monotone);
}

TEST(Profile, OmegaEnvelopeDecays) {
  DensityProfile p = density_profile(fixtures::omega(), 0, 40, 1, 10000);
  ASSERT_EQ(p.points.size(), 40u);
  // envelope[k] bounds every later ratio
  for (std::size_t i = 0; i < p.points.size(); ++i)
    for (std::size_t j = i; j < p.points.size(); ++j) EXPECT_GE(p.envelope[i] + 1e-12, p.points[j].ratio);
  EXPECT_LT(p.envelope[11], 0.05);
  // exact depth k ratio from explicit members: delta = 2^-k
  for (int k = 4; k <= 8; ++k) {
    const auto& pt = p.points[k - 1];
    ASSERT_TRUE(pt.exact_ratio.has_value());
    std::vector<std::pair<Rational, Rational>> clipped;
    Rational d = oracle::pow2(k);
    for (auto [lo, hi] : oracle::omega_members(1, 400)) {
      if (lo >= d) continue;
      clipped.push_back({lo, hi < d ? hi : d});
    }
    EXPECT_LE(abs_value(*pt.exact_ratio - oracle::union_length(clipped) / (2 * d)), oracle::pow2(380)) << k;
  }
}

TEST(Profile, RejectsBadDepth) {
  EXPECT_THROW(density_profile(parse_set("[0,1]"), 0, 0), RangeError);
  EXPECT_THROW(density_profile(parse_set("[0,1]"), 0, 41), RangeError);
}
