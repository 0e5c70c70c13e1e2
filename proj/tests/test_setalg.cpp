#include <gtest/gtest.h>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

namespace {

ClosedFormTerm inv(long c = 1) { return ClosedFormTerm({Monomial::inverse_power(c, 1)}); }

}  // namespace

TEST(Interval, Basics) {
  Interval a = Interval::closed_open(0, 1);
  EXPECT_TRUE(a.contains(0));
  EXPECT_FALSE(a.contains(1));
  EXPECT_TRUE(Interval::open(1, 1).is_empty());
  EXPECT_FALSE(Interval::point(2).is_empty());
  EXPECT_TRUE(a.intersects(Interval::closed(1, 2)) == false);
  EXPECT_TRUE(Interval::closed(0, 1).intersects(Interval::closed(1, 2)));
}

TEST(Cantor, MembershipMatchesOrbitOracle) {
  for (int q : {1, 2, 3, 4, 7, 9, 10, 13, 27, 40, 81, 91, 242}) {
    for (int p = -1; p <= q + 1; ++p) {
      Rational x = make_rational(p, q);
      EXPECT_EQ(contains(SetExpr::cantor(0, 1), x), oracle::in_cantor(x)) << to_string(x);
    }
  }
}

TEST(Cantor, AffineCopy) {
  // cantor(2, 1/3) is 2 + C/3
  for (const auto& y : oracle::grid(0, 1, 81)) {
    Rational x = 2 + y / 3;
    EXPECT_EQ(contains(SetExpr::cantor(2, make_rational(1, 3)), x), oracle::in_cantor(y));
  }
}

TEST(Family, MembershipMatchesOracle) {
  SetExpr omega = fixtures::omega();
  for (const auto& x : oracle::farey(1, 40)) EXPECT_EQ(contains(omega, x), oracle::in_omega(x)) << to_string(x);
  for (int k = 3; k <= 30; ++k) {
    Rational inside = make_rational(1, k) - oracle::pow2(k + 1);
    EXPECT_TRUE(contains(omega, inside)) << k;
  }
}

TEST(Sequence, Membership) {
  SetExpr s = SetExpr::sequence(inv());
  for (int n = 1; n < 200; ++n) EXPECT_TRUE(contains(s, make_rational(1, n)));
  EXPECT_FALSE(contains(s, 0));
  EXPECT_FALSE(contains(s, make_rational(2, 5)));
  SetExpr shifted = SetExpr::sequence(inv(), 3);
  EXPECT_FALSE(contains(shifted, make_rational(1, 2)));
  EXPECT_TRUE(contains(shifted, make_rational(1, 3)));
}

TEST(NormalForm, PreservesMembershipOnRandomExpressions) {
  Corpus corpus(7);
  auto probes = oracle::farey(2, 12);
  for (int k = 1; k <= 12; ++k) probes.push_back(make_rational(1, k) - oracle::pow2(k + 1));
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    if (i % 4 == 0) corpus.new_palette();
    SetExpr e = corpus.random_set(3);
    NormalForm nf;
    try {
      nf = normal_form(e);
    } catch (const UnsupportedIntersection&) {
      continue;
    }
    ++checked;
    for (const auto& x : probes) ASSERT_EQ(contains(e, x), nf.contains(x)) << set_text(e) << " at " << to_string(x);
  }
  EXPECT_GT(checked, 150);
}

TEST(NormalForm, Idempotent) {
  SetExpr e = parse_set("[0,1] \\ Q((0,1/2)) | points(3, 1/7) | [1/2, 2) & (1, 5)");
  SetExpr once = normalize(e);
  EXPECT_EQ(normal_form(once), normal_form(e));
  EXPECT_EQ(normalize(once), once);
}

TEST(NormalForm, UnsupportedIntersections) {
  EXPECT_THROW(normal_form(SetExpr::cantor(0, 1) & SetExpr::cantor(0, make_rational(1, 2))), UnsupportedIntersection);
  EXPECT_THROW(normal_form(SetExpr::sequence(inv()) & fixtures::omega()), UnsupportedIntersection);
}

TEST(NormalForm, EmptyResults) {
  EXPECT_TRUE(normal_form(SetExpr::interval(Interval::closed(0, 1)) & SetExpr::interval(Interval::closed(2, 3))).empty());
  EXPECT_TRUE(normal_form(SetExpr::rationals(Interval::real_line())
                          & SetExpr::cantor(0, 1) & SetExpr::interval(Interval::open(make_rational(1, 3), make_rational(2, 3))))
                  .empty());
  EXPECT_TRUE(normal_form(SetExpr::real_line() - SetExpr::real_line()).empty());
}

TEST(Print, RationalRendering) {
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(-3, 6)), "-1/2");
  EXPECT_EQ(set_text(SetExpr::points({make_rational(1, 3), 2})), "points(1/3,2)");
}
