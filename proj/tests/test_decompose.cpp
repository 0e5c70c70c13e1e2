#include <gtest/gtest.h>

#include <random>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

namespace {

// Random rationals in (a - r, a + r) with denominators unrelated to the
// probe grid used by verify_decomposition.
std::vector<Rational> random_points(const Rational& a, const Rational& r, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-9973, 9973);
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) out.push_back(a + r * make_rational(num(rng), 9973));
  return out;
}

void expect_sound(const PiecewiseFn& f, const Rational& a, const Rational& L, LimitType t) {
  Decomposition d = decompose(f, a, L, t);
  EXPECT_TRUE(verify_decomposition(d, f, a, L, t));
  NormalForm u = normal_form(d.exceptional_union);
  for (const auto& x : random_points(a, 2, 3000, 5)) {
    if (!contains(f.domain, x)) continue;
    EXPECT_EQ(eval(d.g, x) + eval(d.h, x), eval(f, x)) << to_string(x);
    if (!u.contains(x)) EXPECT_EQ(eval(d.h, x), 0) << to_string(x);
    else EXPECT_EQ(eval(d.g, x), L) << to_string(x);
  }
  EXPECT_TRUE(check(d.g, a, L, LimitType::T1).pass());
}

}  // namespace

TEST(Decompose, Dirichlet) { expect_sound(fixtures::dirichlet(), 0, 0, LimitType::T5); }

TEST(Decompose, CantorIndicator) { expect_sound(fixtures::chi_cantor(), make_rational(1, 3), 0, LimitType::T6); }

TEST(Decompose, Spikes) {
  expect_sound(parse_fn("piecewise { 1 on seq(1/n); x + 2 on points(1/3); else x^2 }"), 0, 0, LimitType::T5);
}

TEST(Decompose, ClassicalLimitLeavesEmptyUnion) {
  PiecewiseFn f = PiecewiseFn::polynomial(Poly::identity());
  Decomposition d = decompose(f, 0, 0, LimitType::T5);
  EXPECT_TRUE(normal_form(d.exceptional_union).empty());
  EXPECT_TRUE(verify_decomposition(d, f, 0, 0, LimitType::T5));
}

TEST(Decompose, TamperedDecompositionIsRejected) {
  PiecewiseFn f = fixtures::dirichlet();
  Decomposition d = decompose(f, 0, 0, LimitType::T5);
  d.h.fallback = Poly::constant(1);
  EXPECT_FALSE(verify_decomposition(d, f, 0, 0, LimitType::T5));
  Decomposition e = decompose(f, 0, 0, LimitType::T5);
  e.g.branches.erase(e.g.branches.begin());
  EXPECT_FALSE(verify_decomposition(e, f, 0, 0, LimitType::T5));
}

TEST(Decompose, Preconditions) {
  EXPECT_THROW(decompose(fixtures::chi_cantor(), make_rational(1, 3), 0, LimitType::T5), PrerequisiteNotMet);
  EXPECT_THROW(decompose(fixtures::dirichlet(), 0, 1, LimitType::T5), PrerequisiteNotMet);
  EXPECT_THROW(decompose(fixtures::dirichlet(), 0, 0, LimitType::T3), RangeError);
}

TEST(Decompose, CorpusSuite) {
  auto r = decomposition_suite(9, 40);
  EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes.front());
  EXPECT_GT(r.cases, 0u);
}
