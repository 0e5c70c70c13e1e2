#include <gtest/gtest.h>

#include "limitlab/limitlab.hpp"
#include "oracles.hpp"

using namespace limitlab;

namespace {

using Exists = TypeReport::Exists;

std::string pattern(const LimitReport& rep) {
  std::string s;
  for (LimitType t : kAllTypes) {
    auto e = rep.at(t).exists;
    s += e == Exists::Yes ? 'y' : e == Exists::No ? 'n' : '?';
  }
  return s;  // order T1 T3 T4 T5 T6 T2
}

bool is_reciprocal(const Rational& x) { return x > 0 && x.get_num() == 1; }

}  // namespace

TEST(Classify, Dirichlet) {
  auto rep = classify(fixtures::dirichlet(), 0);
  EXPECT_EQ(pattern(rep), "nnnyyy");
  EXPECT_EQ(*rep.at(LimitType::T5).value, 0);
  EXPECT_TRUE(rep.chain_consistent);
  auto off = classify(fixtures::dirichlet(), make_rational(1, 3));
  EXPECT_EQ(pattern(off), "nnnyyy");
}

TEST(Classify, CantorIndicator) {
  auto rep = classify(fixtures::chi_cantor(), make_rational(1, 3));
  EXPECT_EQ(pattern(rep), "nnnnyy");
  EXPECT_EQ(*rep.at(LimitType::T6).value, 0);
  // 1/2 sits in the middle gap, so every type holds there with L = 0
  EXPECT_EQ(pattern(classify(fixtures::chi_cantor(), make_rational(1, 2))), "yyyyyy");
}

TEST(Classify, OmegaIndicator) {
  auto rep = classify(fixtures::chi_omega(), 0);
  EXPECT_EQ(pattern(rep), "nnnnny");
  EXPECT_EQ(*rep.at(LimitType::T2).value, 0);
}

TEST(Classify, PolynomialHasEveryType) {
  auto rep = classify(PiecewiseFn::polynomial(Poly({1, -3, 0, 2})), 2);
  EXPECT_EQ(pattern(rep), "yyyyyy");
  for (LimitType t : kAllTypes) EXPECT_EQ(*rep.at(t).value, 11);
}

TEST(Classify, EmptyDomainNearPointGivesEveryReal) {
  PiecewiseFn f = parse_fn("piecewise { else x } on [5, 6]");
  auto rep = classify(f, 0);
  EXPECT_TRUE(rep.at(LimitType::T1).every_real);
  EXPECT_EQ(rep.at(LimitType::T1).exists, Exists::Yes);
}

TEST(Check, WitnessHoldsPointwiseForClassicalLimit) {
  PiecewiseFn f = PiecewiseFn::polynomial(Poly({0, 0, 1}));
  Verdict v = check(f, 1, 1, LimitType::T1);
  ASSERT_TRUE(v.pass());
  ASSERT_FALSE(v.witness.empty());
  for (const auto& w : v.witness) {
    for (const auto& x : oracle::grid(1 - w.delta, 1 + w.delta, 400)) {
      if (x == 1 || abs_value(x - 1) >= w.delta) continue;
      EXPECT_LT(abs_value(x * x - 1), w.eps) << "eps " << to_string(w.eps) << " x " << to_string(x);
    }
  }
}

TEST(Check, WitnessExceptionsAreCountable) {
  // off the spikes 1/n the function is x^2; every exception must be a spike
  PiecewiseFn f = parse_fn("piecewise { 1 on seq(1/n); else x^2 }");
  Verdict v = check(f, 0, 0, LimitType::T5);
  ASSERT_TRUE(v.pass());
  for (const auto& w : v.witness) {
    for (const auto& x : oracle::farey(1, 60)) {
      if (x == 0 || abs_value(x) >= w.delta) continue;
      if (abs_value(eval(f, x)) >= w.eps) EXPECT_TRUE(is_reciprocal(x)) << to_string(x);
    }
  }
  EXPECT_TRUE(check(f, 0, 0, LimitType::T4).fail());
  EXPECT_TRUE(check(f, 0, 1, LimitType::T5).fail());
}

TEST(Check, FailCarriesEvidence) {
  Verdict v = check(fixtures::dirichlet(), 0, 0, LimitType::T3);
  ASSERT_TRUE(v.fail());
  ASSERT_TRUE(v.failing_eps.has_value());
  EXPECT_GT(*v.failing_eps, 0);
  EXPECT_FALSE(v.evidence.empty());
  EXPECT_TRUE(v.witness.empty());
}

TEST(Check, WitnessDeltasAreDyadic) {
  Verdict v = check(fixtures::chi_cantor(), make_rational(1, 3), 0, LimitType::T6);
  ASSERT_TRUE(v.pass());
  for (const auto& w : v.witness) {
    EXPECT_EQ(w.delta.get_num(), 1);
    mpz_class d = w.delta.get_den();
    EXPECT_EQ(d & (d - 1), 0) << to_string(w.delta);
  }
}

TEST(Chain, ImplicationsHoldOnCorpus) {
  auto r = chain_suite(3, 60);
  EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes.front());
}

TEST(Uniqueness, Preconditions) {
  EXPECT_TRUE(uniqueness_precondition(SetExpr::real_line(), 0, LimitType::T5));
  EXPECT_TRUE(uniqueness_precondition(SetExpr::real_line(), 0, LimitType::T6));
  EXPECT_FALSE(uniqueness_precondition(parse_set("Q((-1,1))"), 0, LimitType::T5));
  EXPECT_FALSE(uniqueness_precondition(parse_set("cantor(0,1)"), 0, LimitType::T6));
  EXPECT_TRUE(uniqueness_precondition(parse_set("cantor(0,1)"), 0, LimitType::T5));
}

TEST(Uniqueness, NonUniqueLimitsOnThinDomain) {
  // on Q((-1,1)) every value is a T5 limit of any function
  PiecewiseFn f = parse_fn("piecewise { else x } on Q((-1,1))");
  EXPECT_TRUE(check(f, 0, 0, LimitType::T5).pass());
  EXPECT_TRUE(check(f, 0, 7, LimitType::T5).pass());
  EXPECT_TRUE(classify(f, 0).at(LimitType::T5).every_real);
}

TEST(Types, ParseAndPrint) {
  for (LimitType t : kAllTypes) EXPECT_EQ(parse_limit_type(to_string(t)), t);
  EXPECT_EQ(parse_limit_type("t4"), LimitType::T4);
  EXPECT_FALSE(parse_limit_type("t7").has_value());
}
