#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

TEST(Measure, IntervalUnionsMatchMergeOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-40, 40), cnt(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<Rational, Rational>> ivs;
    std::vector<SetExpr> parts;
    for (int k = cnt(rng); k > 0; --k) {
      Rational lo = make_rational(num(rng), 8), hi = make_rational(num(rng), 8);
      if (hi < lo) std::swap(lo, hi);
      ivs.push_back({lo, hi});
      parts.push_back(SetExpr::interval(Interval::closed_open(lo, hi)));
    }
    MeasureValue m = measure(union_of(parts));
    ASSERT_TRUE(m.exact());
    EXPECT_EQ(m.value, oracle::union_length(ivs));
  }
}

TEST(Measure, OmegaAgainstTruncatedUnion) {
  // members beyond N have total length below 2^-N
  const int N = 60;
  Rational head = oracle::union_length(oracle::omega_members(1, N));
  MeasureValue m = measure(fixtures::omega());
  ASSERT_FALSE(m.infinite);
  EXPECT_LE(head, m.lower());
  EXPECT_LE(m.upper(), head + oracle::pow2(N));
  EXPECT_EQ(m.value, make_rational(69, 80));
  EXPECT_TRUE(m.exact());
}

TEST(Measure, NullAndInfiniteSets) {
  EXPECT_EQ(measure(SetExpr::cantor(0, 1)).value, 0);
  EXPECT_EQ(measure(SetExpr::rationals(Interval::real_line())).value, 0);
  EXPECT_EQ(measure(parse_set("seq(1/n) | points(1, 2)")).value, 0);
  EXPECT_TRUE(measure(SetExpr::real_line()).infinite);
  EXPECT_TRUE(measure(parse_set("[0, inf)")).infinite);
  EXPECT_EQ(measure(parse_set("[0,1] \\ Q([0,1])")).value, 1);
  EXPECT_EQ(measure(parse_set("[0,1] \\ cantor(0,1)")).value, 1);
}

TEST(Cardinality, Classes) {
  using K = CardinalityClass::Kind;
  EXPECT_EQ(cardinality(normal_form(SetExpr::empty())).kind, K::Empty);
  auto pts = cardinality(normal_form(parse_set("points(1, 2, 3) | points(2)")));
  EXPECT_EQ(pts.kind, K::Finite);
  EXPECT_EQ(pts.count, 3u);
  EXPECT_EQ(cardinality(normal_form(parse_set("seq(1/n)"))).kind, K::CountablyInfinite);
  EXPECT_EQ(cardinality(normal_form(parse_set("Q((0,1))"))).kind, K::CountablyInfinite);
  EXPECT_EQ(cardinality(normal_form(parse_set("cantor(0,1)"))).kind, K::Uncountable);
  EXPECT_EQ(cardinality(normal_form(parse_set("cantor(0,1) & Q(R)"))).kind, K::CountablyInfinite);
  EXPECT_EQ(cardinality(normal_form(parse_set("[0,0]"))).kind, K::Finite);
}

TEST(Cardinality, LocalTrace) {
  using K = CardinalityClass::Kind;
  SetExpr s = parse_set("seq(1/n) | points(5)");
  EXPECT_EQ(cardinality(window_trace(s, 0, 1)).kind, K::CountablyInfinite);
  EXPECT_EQ(cardinality(window_trace(s, 5, make_rational(1, 10))).kind, K::Empty);
  // (1/2 - 1/10, 1/2 + 1/10) \ {1/2} holds no 1/n
  EXPECT_EQ(cardinality(window_trace(s, make_rational(1, 2), make_rational(1, 10))).kind, K::Empty);
}

TEST(Density, ExactValues) {
  using K = DensityVerdict::Kind;
  auto d = density_at(parse_set("[0,1]"), 0);
  ASSERT_EQ(d.kind, K::Value);
  EXPECT_EQ(d.value, make_rational(1, 2));
  d = density_at(parse_set("[0,1]"), make_rational(1, 2));
  ASSERT_EQ(d.kind, K::Value);
  EXPECT_EQ(d.value, 1);
  EXPECT_EQ(density_at(parse_set("[2,3]"), 0).kind, K::Zero);
  EXPECT_EQ(density_at(parse_set("seq(1/n)"), 0).kind, K::Zero);
  EXPECT_EQ(density_at(parse_set("cantor(0,1)"), 0).kind, K::Zero);
}

TEST(Density, OmegaIsZeroAndRatiosShrink) {
  EXPECT_EQ(density_at(fixtures::omega(), 0).kind, DensityVerdict::Kind::Zero);
  // ratio |Omega ∩ (0, 1/k)| / (2/k) from explicit members; members with
  // 1/n < 1/k lie inside, the tail below 2^-200 is ignored
  Rational prev = 1;
  for (int k : {4, 16, 64}) {
    auto inside = oracle::omega_members(k + 1, 200);
    Rational ratio = oracle::union_length(inside) * k / 2;
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
  EXPECT_LT(prev, make_rational(1, 1000));
}

TEST(Density, ComplementOfThinFamily) {
  auto d = density_at(parse_set("(0,1) \\ family(1/n - (1/2)^n, 1/n)"), 0);
  ASSERT_EQ(d.kind, DensityVerdict::Kind::Value);
  EXPECT_EQ(d.value, make_rational(1, 2));
}

TEST(Refine, EnvironmentOverride) {
  ::setenv("LIMITLAB_MAX_REFINE", "3", 1);
  EXPECT_EQ(max_refine_rounds(), 3u);
  ::setenv("LIMITLAB_MAX_REFINE", "junk", 1);
  EXPECT_EQ(max_refine_rounds(), 64u);
  ::unsetenv("LIMITLAB_MAX_REFINE");
  EXPECT_EQ(max_refine_rounds(), 64u);
}
