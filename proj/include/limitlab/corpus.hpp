#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "limitlab/decompose.hpp"
#include "limitlab/oracle.hpp"
#include "limitlab/parser.hpp"

namespace limitlab {

namespace fixtures {

inline SetExpr omega() {
  return SetExpr::family(ClosedFormTerm({Monomial::inverse_power(1, 1), Monomial::geometric(-1, Rational(1, 2))}),
                         ClosedFormTerm({Monomial::inverse_power(1, 1)}));
}
inline PiecewiseFn dirichlet() { return PiecewiseFn::indicator(SetExpr::rationals(Interval::real_line())); }
inline PiecewiseFn chi_cantor() { return PiecewiseFn::indicator(SetExpr::cantor(0, 1)); }
inline PiecewiseFn chi_omega() { return PiecewiseFn::indicator(omega()); }

}  // namespace fixtures

/// One generated function together with the point it is studied at. All
/// cases drawn from the same palette share their thin atom, so sums and
/// products of them stay inside the supported intersection rules.
struct CorpusCase {
  PiecewiseFn f;
  Rational a;
  int palette = 0;
};

class Corpus {
public:
  enum class Thin { None, Sequence, Family, Cantor };

  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Starts a new palette: a point and at most one accumulating thin atom.
  void new_palette() {
    ++palette_;
    thin_ = pick(std::vector<Thin>{Thin::None, Thin::Sequence, Thin::Family, Thin::Cantor});
    if (thin_ == Thin::Cantor) {
      a_ = pick(std::vector<Rational>{0, Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), 1});
      thin_set_ = SetExpr::cantor(0, 1);
      return;
    }
    a_ = pick(std::vector<Rational>{0, Rational(1, 3), Rational(-1, 2), 1, Rational(1, 4)});
    auto c = [&](const Rational& v) { return Monomial::constant(v); };
    if (thin_ == Thin::Sequence) {
      Rational l = uniform(0, 3) == 0 ? a_ + Rational(1, 2) : a_;
      std::vector<ClosedFormTerm> terms{
          ClosedFormTerm({c(l), Monomial::inverse_power(1, 1)}),
          ClosedFormTerm({c(l), Monomial::inverse_power(-1, 2)}),
          ClosedFormTerm({c(l), Monomial::geometric(-1, Rational(1, 2))}),
          ClosedFormTerm({c(l), Monomial::inverse_power(1, 1), Monomial::geometric(-1, Rational(1, 3))})};
      thin_set_ = SetExpr::sequence(pick(terms));
    } else if (thin_ == Thin::Family) {
      int kind = uniform(0, 2);
      if (kind == 0)
        thin_set_ = SetExpr::family(ClosedFormTerm({c(a_), Monomial::inverse_power(1, 1), Monomial::geometric(-1, Rational(1, 2))}),
                                    ClosedFormTerm({c(a_), Monomial::inverse_power(1, 1)}));
      else if (kind == 1)
        thin_set_ = SetExpr::family(ClosedFormTerm({c(a_), Monomial::inverse_power(-1, 1)}),
                                    ClosedFormTerm({c(a_), Monomial::inverse_power(-1, 1), Monomial::geometric(1, Rational(1, 2))}));
      else
        thin_set_ = SetExpr::family(ClosedFormTerm({c(a_), Monomial::inverse_power(1, 1), Monomial::inverse_power(Rational(-1, 2), 2)}),
                                    ClosedFormTerm({c(a_), Monomial::inverse_power(1, 1)}));
    } else {
      thin_set_ = SetExpr::empty();
    }
  }

  /// A guard built from the palette.
  SetExpr guard() {
    std::vector<std::function<SetExpr()>> menu{
        [&] {
          Rational r = pick(std::vector<Rational>{Rational(1, 4), Rational(1, 2), 1});
          switch (uniform(0, 3)) {
            case 0: return SetExpr::interval(Interval::closed(a_ - r, a_ + r));
            case 1: return SetExpr::interval(Interval::open(a_, a_ + r));
            case 2: return SetExpr::interval(Interval::closed_open(a_ - r, a_));
            default: return SetExpr::interval(Interval::closed(a_ + Rational(1, 2), a_ + 1));
          }
        },
        [&] { return SetExpr::points({a_, a_ + Rational(1, 3)}); },
        [&] {
          switch (uniform(0, 2)) {
            case 0: return SetExpr::rationals(Interval::real_line());
            case 1: return SetExpr::rationals(Interval::open(a_ - 1, a_ + 1));
            default: return SetExpr::rationals(Interval::open(a_, a_ + Rational(1, 2)));
          }
        },
        [&] { return SetExpr::real_line() - SetExpr::rationals(Interval::real_line()); },
    };
    if (thin_ != Thin::None) {
      menu.push_back([&] { return thin_set_; });
      menu.push_back([&] { return thin_set_; });
    }
    SetExpr g = pick(menu)();
    int combine = uniform(0, 5);
    if (combine == 0) g = g | pick(menu)();
    if (combine == 1) g = g - pick(menu)();
    if (combine == 2) g = g & SetExpr::interval(Interval::closed(a_ - 1, a_ + 1));
    return g;
  }

  /// v + c1 (x - a) + c2 (x - a)^2 with v among a few values.
  Poly value() {
    Rational v = pick(std::vector<Rational>{0, 0, 1, -1, 2, Rational(1, 2)});
    Rational c1 = pick(std::vector<Rational>{0, 0, 1, -2, Rational(1, 2)});
    Rational c2 = pick(std::vector<Rational>{0, 0, 0, 1, -1});
    Poly shift({-a_, Rational(1)});
    return Poly::constant(v) + shift.scaled(c1) + (shift * shift).scaled(c2);
  }

  CorpusCase next_case(int per_palette = 4) {
    if (palette_ == 0 || ++in_palette_ >= per_palette) {
      new_palette();
      in_palette_ = 0;
    }
    PiecewiseFn f;
    int n = uniform(0, 3);
    for (int i = 0; i < n; ++i) f.branches.push_back(Branch{guard(), value()});
    f.fallback = value();
    return CorpusCase{std::move(f), a_, palette_};
  }

  /// Constant-branch function with nonzero values, usable as a divisor.
  PiecewiseFn divisor() {
    PiecewiseFn d;
    int n = uniform(0, 2);
    for (int i = 0; i < n; ++i)
      d.branches.push_back(Branch{guard(), Poly::constant(pick(std::vector<Rational>{1, 2, -1, Rational(1, 2), 3}))});
    d.fallback = Poly::constant(pick(std::vector<Rational>{1, 2, -3, Rational(1, 4)}));
    return d;
  }

  const Rational& point() const { return a_; }
  Thin thin() const { return thin_; }

  // ---- random syntax for the parser round trip ----

  Rational small_rational() {
    return make_rational(uniform(-12, 12), uniform(1, 6));
  }

  ClosedFormTerm random_term() {
    std::vector<Monomial> ms;
    if (uniform(0, 1)) ms.push_back(Monomial::constant(small_rational()));
    int n = uniform(1, 2);
    for (int i = 0; i < n; ++i) {
      Rational c = small_rational();
      if (c == 0) c = 1;
      if (uniform(0, 1))
        ms.push_back(Monomial::inverse_power(c, static_cast<unsigned>(uniform(1, 3)), uniform(0, 4) == 0 ? 2 : 0));
      else
        ms.push_back(Monomial::geometric(c, Rational(uniform(1, 4), 5)));
    }
    return ClosedFormTerm(std::move(ms));
  }

  SetExpr random_atom() {
    while (true) {
      try {
        switch (uniform(0, 8)) {
          case 0: return SetExpr::empty();
          case 1: return SetExpr::real_line();
          case 2:
          case 3: {
            Rational x = small_rational(), y = x + make_rational(uniform(0, 8), uniform(1, 4));
            Endpoint lo = uniform(0, 6) == 0 ? Endpoint::unbounded() : Endpoint{x, false, uniform(0, 1) == 1};
            Endpoint hi = uniform(0, 6) == 0 ? Endpoint::unbounded() : Endpoint{y, false, uniform(0, 1) == 1};
            return SetExpr::interval(Interval(lo, hi));
          }
          case 4: {
            std::vector<Rational> pts;
            for (int i = uniform(1, 4); i > 0; --i) pts.push_back(small_rational());
            return SetExpr::points(pts);
          }
          case 5:
            return uniform(0, 3) == 0 ? SetExpr::rationals(Interval::real_line())
                                      : SetExpr::rationals(Interval::open(small_rational(), small_rational() + 2));
          case 6: {
            Rational s = small_rational();
            return SetExpr::cantor(small_rational(), s == 0 ? Rational(1) : s);
          }
          case 7: return SetExpr::sequence(random_term(), static_cast<unsigned long>(uniform(1, 3)));
          default: {
            ClosedFormTerm hi = random_term();
            std::vector<Monomial> w = hi.monomials();
            w.push_back(Monomial::geometric(-1, Rational(1, 2)));
            return SetExpr::family(ClosedFormTerm(w), hi, static_cast<unsigned long>(uniform(1, 2)));
          }
        }
      } catch (const Error&) {
        // atom constructors reject sequences that do not settle; draw again
      }
    }
  }

  SetExpr random_set(int depth) {
    if (depth == 0 || uniform(0, 2) == 0) return random_atom();
    auto op = pick(std::vector<SetExpr::Op>{SetExpr::Op::Union, SetExpr::Op::Intersection, SetExpr::Op::Difference});
    std::vector<SetExpr> kids;
    for (int i = uniform(2, 3); i > 0; --i) kids.push_back(random_set(depth - 1));
    return SetExpr::node(op, std::move(kids));
  }

  Poly random_poly() {
    std::vector<Rational> c;
    for (int i = uniform(0, 3); i >= 0; --i) c.push_back(uniform(0, 2) ? small_rational() : Rational(0));
    return Poly(std::move(c));
  }

  PiecewiseFn random_fn() {
    PiecewiseFn f;
    for (int i = uniform(0, 3); i > 0; --i) f.branches.push_back(Branch{random_set(2), random_poly()});
    f.fallback = random_poly();
    if (uniform(0, 4) == 0) f.domain = random_set(1);
    return f;
  }

private:
  std::mt19937_64 rng_;
  int palette_ = 0;
  int in_palette_ = 0;
  Thin thin_ = Thin::None;
  Rational a_ = 0;
  SetExpr thin_set_;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  double seconds = 0;
  std::vector<std::string> notes;  // first few violations

  bool ok() const { return violations == 0; }
  void violation(std::string what) {
    ++violations;
    if (notes.size() < 5) notes.push_back(std::move(what));
  }
};

namespace detail {

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Verdict::Status status_of(const TypeReport& tr, std::size_t i) { return tr.verdicts[i].second.status; }

inline bool analysis_failed(const LimitReport& rep) {
  for (const auto& [t, tr] : rep.types)
    if (tr.exists == TypeReport::Exists::Undecidable) return true;
  return false;
}

}  // namespace detail

/// T1, T3 and T4 give identical verdicts for every candidate and for the
/// non-candidate probe.
inline SuiteResult equivalence_suite(std::uint64_t seed, std::size_t count) {
  detail::Stopwatch sw;
  SuiteResult r{"T1 = T3 = T4"};
  Corpus gen(seed);
  for (std::size_t k = 0; k < count; ++k) {
    CorpusCase c = gen.next_case();
    LimitReport rep = classify(c.f, c.a);
    ++r.cases;
    if (detail::analysis_failed(rep)) ++r.skipped;
    const auto &t1 = rep.at(LimitType::T1), &t3 = rep.at(LimitType::T3), &t4 = rep.at(LimitType::T4);
    bool agree = t1.every_real == t3.every_real && t1.every_real == t4.every_real;
    for (std::size_t i = 0; i < t1.verdicts.size(); ++i)
      agree = agree && detail::status_of(t1, i) == detail::status_of(t3, i) &&
              detail::status_of(t1, i) == detail::status_of(t4, i);
    if (!agree) r.violation(fn_text(c.f) + " at " + to_string(c.a));
  }
  r.seconds = sw.seconds();
  return r;
}

/// Pass at a stronger type implies Pass at every weaker type with the same
/// value, and the three fixtures separate T1 < T5 < T6 < T2.
inline SuiteResult chain_suite(std::uint64_t seed, std::size_t count) {
  detail::Stopwatch sw;
  SuiteResult r{"chain soundness"};
  Corpus gen(seed);
  for (std::size_t k = 0; k < count; ++k) {
    CorpusCase c = gen.next_case();
    LimitReport rep = classify(c.f, c.a);
    ++r.cases;
    bool ok = rep.chain_consistent;
    const std::vector<LimitType> order{LimitType::T1, LimitType::T5, LimitType::T6, LimitType::T2};
    for (std::size_t j = 0; j + 1 < order.size(); ++j)
      if (rep.at(order[j]).every_real && !rep.at(order[j + 1]).every_real) ok = false;
    if (!ok) r.violation(fn_text(c.f) + " at " + to_string(c.a));
  }
  auto separates = [&](const PiecewiseFn& f, LimitType strong, LimitType weak, const char* name) {
    ++r.cases;
    if (!check(f, 0, 0, strong).fail() || !check(f, 0, 0, weak).pass())
      r.violation(std::string(name) + " does not separate " + to_string(strong) + " from " + to_string(weak));
  };
  separates(fixtures::dirichlet(), LimitType::T1, LimitType::T5, "Dirichlet");
  separates(fixtures::chi_cantor(), LimitType::T5, LimitType::T6, "cantor indicator");
  separates(fixtures::chi_omega(), LimitType::T6, LimitType::T2, "omega indicator");
  r.seconds = sw.seconds();
  return r;
}

/// Countable (null) domains make every value a T5 (T6) limit; on R the
/// value is unique.
inline SuiteResult uniqueness_suite(std::uint64_t seed, std::size_t count) {
  detail::Stopwatch sw;
  SuiteResult r{"uniqueness"};
  const SetExpr qdom = SetExpr::rationals(Interval::open(-1, 1));
  const SetExpr cdom = SetExpr::cantor(0, 1);
  if (uniqueness_precondition(qdom, 0, LimitType::T5)) r.violation("Q((-1,1)) reported uncountable near 0");
  if (uniqueness_precondition(cdom, 0, LimitType::T6)) r.violation("cantor(0,1) reported of positive measure near 0");
  if (!uniqueness_precondition(SetExpr::real_line(), 0, LimitType::T5) ||
      !uniqueness_precondition(SetExpr::real_line(), 0, LimitType::T6))
    r.violation("R fails the uniqueness precondition");
  Corpus gen(seed);
  std::size_t done = 0;
  while (done < count) {
    CorpusCase c = gen.next_case();
    if (c.a != 0) continue;
    ++done;
    ++r.cases;
    PiecewiseFn fq = c.f;
    fq.domain = qdom;
    for (const Rational& L : {Rational(0), Rational(1)})
      if (!check(fq, 0, L, LimitType::T5).pass()) r.violation("Q-domain T5 rejects " + to_string(L) + ": " + fn_text(fq));
    if (gen.thin() == Corpus::Thin::None || gen.thin() == Corpus::Thin::Cantor) {
      PiecewiseFn fc = c.f;
      fc.domain = cdom;
      for (const Rational& L : {Rational(0), Rational(1)})
        if (!check(fc, 0, L, LimitType::T6).pass())
          r.violation("cantor-domain T6 rejects " + to_string(L) + ": " + fn_text(fc));
    }
    LimitReport rep = classify(c.f, 0);
    for (LimitType t : {LimitType::T5, LimitType::T6}) {
      const TypeReport& tr = rep.at(t);
      std::size_t passing = 0;
      for (const auto& [L, v] : tr.verdicts) passing += v.pass();
      if (passing > 1 || tr.every_real) r.violation("two " + to_string(t) + " values on R: " + fn_text(c.f));
    }
  }
  r.seconds = sw.seconds();
  return r;
}

/// Sums, products, scalings and quotients of certified limits.
inline SuiteResult arithmetic_suite(std::uint64_t seed, std::size_t pairs) {
  detail::Stopwatch sw;
  SuiteResult r{"arithmetic"};
  Corpus gen(seed);
  std::size_t attempts = 0;
  while (r.cases < pairs && attempts < pairs * 40) {
    ++attempts;
    CorpusCase c1 = gen.next_case(8);
    CorpusCase c2 = gen.next_case(8);
    if (c1.palette != c2.palette) continue;
    LimitType t = gen.uniform(0, 1) ? LimitType::T5 : LimitType::T6;
    LimitReport r1 = classify(c1.f, c1.a), r2 = classify(c2.f, c2.a);
    const TypeReport &a1 = r1.at(t), &a2 = r2.at(t);
    if (a1.exists != TypeReport::Exists::Yes || a2.exists != TypeReport::Exists::Yes) continue;
    const Rational L1 = *a1.value, L2 = *a2.value;
    ++r.cases;
    auto expect = [&](const PiecewiseFn& f, const Rational& L, const char* what) {
      Verdict v = check(f, c1.a, L, t);
      if (!v.pass())
        r.violation(std::string(what) + " " + to_string(t) + " " + to_string(v.status) + " " + v.reason + " for " +
                    fn_text(c1.f) + " and " + fn_text(c2.f));
    };
    expect(arith(c1.f, c2.f, ArithOp::add()), L1 + L2, "sum");
    expect(arith(c1.f, c2.f, ArithOp::mul()), L1 * L2, "product");
    Rational lambda = gen.pick(std::vector<Rational>{Rational(3, 2), -2, Rational(1, 3)});
    expect(arith(c1.f, c1.f, ArithOp::scale(lambda)), lambda * L1, "scale");
    PiecewiseFn d = gen.divisor();
    LimitReport rd = classify(d, c1.a);
    const TypeReport& ad = rd.at(t);
    if (ad.exists == TypeReport::Exists::Yes && *ad.value != 0)
      expect(arith(c1.f, d, ArithOp::div()), L1 / *ad.value, "quotient");
  }
  r.seconds = sw.seconds();
  return r;
}

/// decompose then verify_decomposition for every T5/T6 pass; a tampered h
/// must be rejected.
inline SuiteResult decomposition_suite(std::uint64_t seed, std::size_t count) {
  detail::Stopwatch sw;
  SuiteResult r{"decomposition"};
  Corpus gen(seed);
  for (std::size_t k = 0; k < count; ++k) {
    CorpusCase c = gen.next_case();
    for (LimitType t : {LimitType::T5, LimitType::T6}) {
      for (const Rational& L : candidates(c.f, c.a)) {
        if (!check(c.f, c.a, L, t).pass()) continue;
        ++r.cases;
        Decomposition d = decompose(c.f, c.a, L, t);
        if (!verify_decomposition(d, c.f, c.a, L, t))
          r.violation("round trip " + to_string(t) + " L=" + to_string(L) + ": " + fn_text(c.f));
        Decomposition bad = d;
        bad.h.branches.insert(bad.h.branches.begin(),
                              Branch{SetExpr::interval(Interval::closed(c.a, c.a + 1)), Poly::constant(1)});
        if (verify_decomposition(bad, c.f, c.a, L, t)) r.violation("tampered h accepted: " + fn_text(c.f));
      }
    }
  }
  r.seconds = sw.seconds();
  return r;
}

/// Monte Carlo measure against exact measure on random interval unions.
inline SuiteResult oracle_suite(std::uint64_t seed, std::size_t runs, std::size_t samples) {
  detail::Stopwatch sw;
  SuiteResult r{"oracle"};
  Corpus gen(seed);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < runs; ++k) {
    std::vector<SetExpr> parts;
    for (int i = gen.uniform(1, 4); i > 0; --i) {
      Rational x = make_rational(gen.uniform(-64, 60), 64);
      parts.push_back(SetExpr::interval(Interval::closed(x, x + make_rational(gen.uniform(1, 40), 64))));
    }
    SetExpr e = union_of(parts);
    SampleConfig cfg{splitmix64(seed * 1000003 + k), samples, 0, 1};
    McEstimate est = mc_measure(e, cfg);
    Rational exact = measure(e & SetExpr::interval(Interval::open(-1, 1))).value;
    ++r.cases;
    if (est.agrees_with(exact)) ++agree;
  }
  if (agree * 100 < runs * 99)
    r.violation(std::to_string(agree) + " of " + std::to_string(runs) + " runs within 3 sigma");
  r.notes.push_back(std::to_string(agree) + "/" + std::to_string(runs) + " within 3 sigma");
  r.seconds = sw.seconds();
  return r;
}

/// print -> parse identity on random sets and functions, and positioned
/// errors for malformed text.
inline SuiteResult parser_suite(std::uint64_t seed, std::size_t count) {
  detail::Stopwatch sw;
  SuiteResult r{"parser"};
  Corpus gen(seed);
  for (std::size_t k = 0; k < count; ++k) {
    ++r.cases;
    std::string text;
    try {
      if (k % 5 == 4) {
        PiecewiseFn f = gen.random_fn();
        text = fn_text(f);
        if (!(parse_fn(text) == f)) r.violation("function round trip: " + text);
      } else {
        SetExpr s = gen.random_set(3);
        text = set_text(s);
        if (!(parse_set(text) == s)) r.violation("set round trip: " + text);
      }
    } catch (const std::exception& ex) {
      r.violation("round trip threw on " + text + ": " + ex.what());
      continue;
    }
    // truncations and corruptions must fail cleanly with a position
    std::size_t cut = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(text.size()) - 1));
    std::string broken = text.substr(0, cut);
    if (gen.uniform(0, 1)) broken += gen.pick(std::vector<std::string>{",", "(", "]", "&&", "@", "1/0", "x^"});
    try {
      if (k % 5 == 4)
        parse_fn(broken);
      else
        parse_set(broken);
    } catch (const SyntaxError& e) {
      if (e.line() < 1 || e.column() < 1 || static_cast<std::size_t>(e.column()) > broken.size() + 1)
        r.violation("bad error position for '" + broken + "'");
    } catch (const Error&) {
      // semantically invalid but well-formed prefix, e.g. a rejected atom
    } catch (const std::exception& e) {
      r.violation("unexpected exception for '" + broken + "': " + e.what());
    }
  }
  r.seconds = sw.seconds();
  return r;
}

}  // namespace limitlab
