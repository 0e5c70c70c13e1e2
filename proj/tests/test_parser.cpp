#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

namespace {

void expect_same_members(const SetExpr& a, const SetExpr& b) {
  for (const auto& x : oracle::farey(3, 12)) EXPECT_EQ(contains(a, x), contains(b, x)) << to_string(x);
}

SetExpr iv(long lo, long hi) { return SetExpr::interval(Interval::closed(lo, hi)); }

}  // namespace

TEST(ParseSet, Atoms) {
  EXPECT_EQ(parse_set("empty"), SetExpr::empty());
  EXPECT_EQ(parse_set("R"), SetExpr::real_line());
  EXPECT_EQ(parse_set("[0, 1)"), SetExpr::interval(Interval::closed_open(0, 1)));
  EXPECT_EQ(parse_set("(-1/2, 3]"), SetExpr::interval(Interval::open_closed(make_rational(-1, 2), 3)));
  EXPECT_EQ(parse_set("Q(R)"), SetExpr::rationals(Interval::real_line()));
  EXPECT_EQ(parse_set("Q([0,1])"), SetExpr::rationals(Interval::closed(0, 1)));
  EXPECT_EQ(parse_set("cantor(1, 1/3)"), SetExpr::cantor(1, make_rational(1, 3)));
  EXPECT_EQ(parse_set("points(2, 1/2)"), SetExpr::points({2, make_rational(1, 2)}));
  EXPECT_EQ(parse_set("(-inf, 0]"), SetExpr::interval(Interval(Endpoint::unbounded(), Endpoint::closed(0))));
}

TEST(ParseSet, Terms) {
  SetExpr s = parse_set("seq(1/n)");
  for (int n = 1; n < 30; ++n) EXPECT_TRUE(contains(s, make_rational(1, n)));
  SetExpr t = parse_set("seq(2 + 3/n^2)");
  EXPECT_TRUE(contains(t, make_rational(2 * 16 + 3, 16)));
  EXPECT_FALSE(contains(t, make_rational(2 * 15 + 3, 15)));
  SetExpr g = parse_set("seq((1/2)^n)");
  EXPECT_TRUE(contains(g, make_rational(1, 1024)));
  EXPECT_FALSE(contains(g, make_rational(1, 3)));
  SetExpr shifted = parse_set("seq(1/(n+1))");
  EXPECT_FALSE(contains(shifted, 1));
  EXPECT_TRUE(contains(shifted, make_rational(1, 2)));
  SetExpr from = parse_set("seq(1/n){n>=4}");
  EXPECT_FALSE(contains(from, make_rational(1, 3)));
  EXPECT_TRUE(contains(from, make_rational(1, 4)));
  EXPECT_THROW(parse_set("seq((3/2)^n)"), RangeError);
}

TEST(ParseSet, PrecedenceAndAssociativity) {
  // & binds tighter than \, which binds tighter than |
  expect_same_members(parse_set("[0,3] | [1,5] & [4,6]"), iv(0, 3) | (iv(1, 5) & iv(4, 6)));
  expect_same_members(parse_set("[0,3] \\ [1,2] & [0,5/2]"), iv(0, 3) - (iv(1, 2) & parse_set("[0,5/2]")));
  expect_same_members(parse_set("[0,3] | [1,5] \\ [2,4]"), iv(0, 3) | (iv(1, 5) - iv(2, 4)));
  // left-associative difference
  expect_same_members(parse_set("[0,5] \\ [1,2] \\ [1,3]"), (iv(0, 5) - iv(1, 2)) - iv(1, 3));
  expect_same_members(parse_set("([0,3] | [1,5]) & [4,6]"), (iv(0, 3) | iv(1, 5)) & iv(4, 6));
}

TEST(ParseSet, CommentsAndWhitespace) {
  SetExpr s = parse_set("# leading comment\n  [0,1]   # the unit interval\n | points(3)\n# trailing\n");
  EXPECT_TRUE(contains(s, 3));
  EXPECT_TRUE(contains(s, make_rational(1, 2)));
  EXPECT_FALSE(contains(s, 2));
}

TEST(ParseSet, ErrorPositions) {
  try {
    parse_set("[0,");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 4);
  }
  try {
    parse_set("[0,1] |\n  frob(2)");
    FAIL() << "expected an unknown atom";
  } catch (const UnknownAtom& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  try {
    parse_set("points(1, é)");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.column(), 11);  // columns count code points
  }
  EXPECT_THROW(parse_set("[0,1] junk"), SyntaxError);
  EXPECT_THROW(parse_set("points()"), SyntaxError);
  EXPECT_THROW(parse_set("[0, 1/0]"), SyntaxError);
}

TEST(ParseSet, RoundTrip) {
  for (const char* text : {"empty", "R", "[0,1)", "Q((0,1/2)) | cantor(0,1)", "family(1/n - (1/2)^n, 1/n)",
                           "seq(1/n) & (0,1/4)", "[0,1] \\ (Q(R) | points(1/2))", "points(-3/4,2)"}) {
    SetExpr s = parse_set(text);
    EXPECT_EQ(parse_set(set_text(s)), s) << text << " -> " << set_text(s);
  }
}

TEST(ParseFn, Piecewise) {
  PiecewiseFn f = parse_fn("piecewise { x^2 - 1/2x + 3 on [0,1]; -x on Q(R); else 2 }");
  EXPECT_EQ(eval(f, make_rational(1, 2)), make_rational(1, 4) - make_rational(1, 4) + 3);
  EXPECT_EQ(eval(f, make_rational(3, 2)), make_rational(-3, 2));
  EXPECT_EQ(f.fallback, Poly::constant(2));
  PiecewiseFn g = parse_fn(fn_text(f));
  EXPECT_EQ(g, f);
  PiecewiseFn d = parse_fn("piecewise { else 3*x^3 } on [0, 2]");
  EXPECT_EQ(eval(d, 1), 3);
  EXPECT_THROW(eval(d, 3), OutsideDomain);
  EXPECT_THROW(parse_fn("piecewise { x on [0,1] }"), SyntaxError);
}

TEST(ParseFn, Samples) {
  for (const char* name : {"dirichlet.fn", "cantor.fn", "omega.fn", "spikes.fn", "thin.fn"}) {
    std::string path = std::string(LIMITLAB_SAMPLE_DIR) + "/" + name;
    std::ifstream in(path);
    ASSERT_TRUE(in) << path;
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NO_THROW(parse_fn(ss.str())) << name;
  }
}

TEST(Parser, CorpusSuite) {
  auto r = parser_suite(11, 200);
  EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes.front());
}
