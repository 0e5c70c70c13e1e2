#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "limitlab/limitlab.hpp"

using namespace limitlab;

namespace {

using Exists = TypeReport::Exists;

struct Criterion {
  std::string name;
  double budget;  // seconds
  std::function<std::string()> run;  // empty string means success
};

std::string pattern(const LimitReport& rep) {
  std::string s;
  for (LimitType t : kAllTypes) {
    auto e = rep.at(t).exists;
    s += e == Exists::Yes ? 'y' : e == Exists::No ? 'n' : '?';
  }
  return s;
}

std::string expect_pattern(const PiecewiseFn& f, const Rational& a, const std::string& want) {
  auto rep = classify(f, a);
  if (!rep.chain_consistent) return "chain inconsistent at " + to_string(a);
  std::string got = pattern(rep);
  if (got != want) return "at " + to_string(a) + " got " + got + ", want " + want;
  return "";
}

std::string suite_outcome(const SuiteResult& r, std::size_t min_cases) {
  if (r.cases < min_cases) return r.name + ": only " + std::to_string(r.cases) + " cases";
  if (!r.ok()) return r.name + ": " + std::to_string(r.violations) + " violations" + (r.notes.empty() ? "" : ", " + r.notes.front());
  return "";
}

}  // namespace

int main() {
  // order of pattern letters: T1 T3 T4 T5 T6 T2
  std::vector<Criterion> criteria{
      {"dirichlet function at 0 and 1/3", 1.0,
       [] {
         auto f = fixtures::dirichlet();
         std::string e = expect_pattern(f, 0, "nnnyyy");
         if (e.empty()) e = expect_pattern(f, make_rational(1, 3), "nnnyyy");
         if (e.empty() && *classify(f, 0).at(LimitType::T5).value != 0) e = "T5 value is not 0";
         return e;
       }},
      {"cantor indicator", 5.0,
       [] {
         auto f = fixtures::chi_cantor();
         std::string e = expect_pattern(f, make_rational(1, 3), "nnnnyy");
         if (e.empty()) e = expect_pattern(f, 0, "nnnnyy");
         if (e.empty()) e = expect_pattern(f, make_rational(1, 2), "yyyyyy");
         if (e.empty() && !check(f, make_rational(1, 3), 0, LimitType::T6).pass()) e = "T6 check at 1/3 did not pass";
         return e;
       }},
      {"shrinking-interval family", 5.0,
       [] {
         MeasureValue m = measure(fixtures::omega());
         if (!m.exact() || m.value != make_rational(69, 80)) return std::string("measure is not 69/80");
         if (density_at(fixtures::omega(), 0).kind != DensityVerdict::Kind::Zero) return std::string("density at 0 is not zero");
         return expect_pattern(fixtures::chi_omega(), 0, "nnnnny");
       }},
      {"T1 = T3 = T4 on generated corpus", 60.0, [] { return suite_outcome(equivalence_suite(1, 250), 200); }},
      {"chain of implications", 60.0, [] { return suite_outcome(chain_suite(2, 250), 200); }},
      {"uniqueness of T5/T6 limits", 60.0, [] { return suite_outcome(uniqueness_suite(3, 125), 100); }},
      {"arithmetic closure", 60.0, [] { return suite_outcome(arithmetic_suite(4, 60), 50); }},
      {"decomposition f = g + h", 60.0, [] { return suite_outcome(decomposition_suite(5, 250), 150); }},
      {"sampling oracle", 60.0,
       [] {
         std::string e = suite_outcome(oracle_suite(6, 100, 100000), 100);
         if (!e.empty()) return e;
         DensityProfile p = density_profile(fixtures::omega(), 0, 40, 6, 10000);
         if (!(p.envelope[11] < 0.05)) return "envelope at depth 12 is " + std::to_string(p.envelope[11]);
         return std::string();
       }},
      {"parser round trip", 30.0, [] { return suite_outcome(parser_suite(7, 500), 500); }},
  };

  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("threw ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && secs > c.budget) why = "over budget of " + std::to_string(c.budget) + " s";
    if (!why.empty()) ++failed;
    std::printf("%s [%2d] %-36s %7.2f s%s%s\n", why.empty() ? "PASS" : "FAIL", index, c.name.c_str(), secs,
                why.empty() ? "" : "  ", why.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
