#include <gtest/gtest.h>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

namespace {

std::vector<Rational> probes() {
  auto out = oracle::grid(-2, 2, 96);
  for (int n = 1; n <= 20; ++n) out.push_back(make_rational(1, n));
  out.push_back(make_rational(2, 9));
  out.push_back(make_rational(1, 7) - oracle::pow2(8));
  return out;
}

}  // namespace

TEST(Eval, FirstMatchingBranchWins) {
  PiecewiseFn f = parse_fn("piecewise { 2 on [0,1]; 3 on [0,2]; else x }");
  EXPECT_EQ(eval(f, make_rational(1, 2)), 2);
  EXPECT_EQ(eval(f, make_rational(3, 2)), 3);
  EXPECT_EQ(eval(f, -5), -5);
}

TEST(Eval, OutsideDomainThrows) {
  PiecewiseFn f = parse_fn("piecewise { else x^2 } on [0,1]");
  EXPECT_EQ(eval(f, make_rational(1, 3)), make_rational(1, 9));
  EXPECT_THROW(eval(f, 2), OutsideDomain);
}

TEST(Arith, PointwiseAgreement) {
  PiecewiseFn f = parse_fn("piecewise { x^2 on Q(R); 1 on seq(1/n); else 1 - x }");
  PiecewiseFn g = parse_fn("piecewise { 3 on [0, 1/2); else 2x + 1 }");
  PiecewiseFn sum = arith(f, g, ArithOp::add());
  PiecewiseFn diff = arith(f, g, ArithOp::sub());
  PiecewiseFn prod = arith(f, g, ArithOp::mul());
  PiecewiseFn sc = arith(f, f, ArithOp::scale(make_rational(-2, 3)));
  for (const auto& x : probes()) {
    Rational fx = eval(f, x), gx = eval(g, x);
    EXPECT_EQ(eval(sum, x), fx + gx) << to_string(x);
    EXPECT_EQ(eval(diff, x), fx - gx) << to_string(x);
    EXPECT_EQ(eval(prod, x), fx * gx) << to_string(x);
    EXPECT_EQ(eval(sc, x), make_rational(-2, 3) * fx) << to_string(x);
  }
}

TEST(Arith, Division) {
  PiecewiseFn f = parse_fn("piecewise { x on Q(R); else x^2 }");
  PiecewiseFn g = parse_fn("piecewise { 2 on [0,1]; else -4 }");
  PiecewiseFn q = arith(f, g, ArithOp::div());
  for (const auto& x : probes()) EXPECT_EQ(eval(q, x), eval(f, x) / eval(g, x));

  EXPECT_THROW(arith(f, parse_fn("piecewise { else x }"), ArithOp::div()), DivisionByPossiblyZero);
  EXPECT_THROW(arith(f, parse_fn("piecewise { 0 on [0,1]; else 1 }"), ArithOp::div()), DivisionByPossiblyZero);
  EXPECT_THROW(arith(f, parse_fn("piecewise { else x^2 + 1 }"), ArithOp::div()), NonPolynomialQuotient);
}

TEST(Arith, DomainMismatch) {
  PiecewiseFn f = parse_fn("piecewise { else x } on [0,1]");
  PiecewiseFn g = parse_fn("piecewise { else x } on [0,2]");
  EXPECT_THROW(arith(f, g, ArithOp::add()), RangeError);
}

TEST(ExceptionalSet, SandwichesThePointwiseSet) {
  struct Case {
    const char* fn;
    Rational a, L, delta, eps;
  };
  std::vector<Case> cases{
      {"piecewise { 1 on Q(R); else 0 }", 0, 0, 1, make_rational(1, 2)},
      {"piecewise { else x^2 - 2 }", 0, -2, 2, make_rational(1, 4)},
      {"piecewise { x + 1 on seq(1/n); else x^3 }", 0, 0, 1, make_rational(1, 10)},
      {"piecewise { 1 on cantor(0,1); else x }", make_rational(1, 3), make_rational(1, 3), make_rational(1, 3),
       make_rational(1, 9)},
  };
  for (const auto& c : cases) {
    PiecewiseFn f = parse_fn(c.fn);
    SandwichSet s = exceptional_set(f, c.a, c.L, c.delta, c.eps);
    NormalForm inner = normal_form(s.inner), outer = normal_form(s.outer);
    for (const auto& x : oracle::grid(c.a - c.delta, c.a + c.delta, 200)) {
      bool in_window = x != c.a && abs_value(x - c.a) < c.delta;
      Rational fx = eval(f, x);
      bool truth = in_window && abs_value(fx - c.L) >= c.eps;
      if (inner.contains(x)) EXPECT_TRUE(truth) << c.fn << " at " << to_string(x);
      if (truth) EXPECT_TRUE(outer.contains(x)) << c.fn << " at " << to_string(x);
    }
  }
}

TEST(ExceptionalSet, RejectsNonPositive) {
  PiecewiseFn f = PiecewiseFn::polynomial(Poly::identity());
  EXPECT_THROW(exceptional_set(f, 0, 0, 0, 1), RangeError);
  EXPECT_THROW(exceptional_set(f, 0, 0, 1, 0), RangeError);
}

TEST(Superlevel, IrrationalRootsAreEnclosed) {
  // |x^2 - 0| >= 2 has roots at +-sqrt 2
  SandwichSet s = isolate_superlevel(Poly({0, 0, 1}), 0, 2);
  EXPECT_LE(s.gap, 4 * default_root_width());
  for (const auto& x : oracle::grid(-3, 3, 600)) {
    bool truth = x * x >= 2;
    if (contains(s.inner, x)) EXPECT_TRUE(truth);
    if (truth) EXPECT_TRUE(contains(s.outer, x));
  }
}
