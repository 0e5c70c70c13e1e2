#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "limitlab/errors.hpp"
#include "limitlab/poly.hpp"
#include "limitlab/rational.hpp"

namespace limitlab {

/// One summand of a ClosedFormTerm: a constant c, a geometric term c*r^n
/// with 0 < r < 1, or an inverse power c/(n+shift)^power. Shifts only arise
/// internally (gap families); the text grammar always has shift 0.
struct Monomial {
  enum class Kind { Constant, InversePower, Geometric };
  Kind kind = Kind::Constant;
  Rational coef = 0;
  Rational ratio = 0;
  unsigned power = 0;
  unsigned shift = 0;

  static Monomial constant(Rational c) { return {Kind::Constant, std::move(c), 0, 0, 0}; }
  static Monomial geometric(Rational c, Rational r) {
    if (r <= 0 || r >= 1) throw RangeError("geometric ratio " + to_string(r) + " outside (0,1)");
    return {Kind::Geometric, std::move(c), std::move(r), 0, 0};
  }
  static Monomial inverse_power(Rational c, unsigned k, unsigned shift = 0) {
    if (k == 0) throw RangeError("inverse power exponent must be positive");
    return {Kind::InversePower, std::move(c), 0, k, shift};
  }

  bool same_shape(const Monomial& o) const {
    return kind == o.kind && ratio == o.ratio && power == o.power && shift == o.shift;
  }
  bool operator==(const Monomial& o) const { return same_shape(o) && coef == o.coef; }
};

/// Leading behaviour of term(n) - limit as n -> infinity.
struct Asymptotic {
  enum class Kind { Zero, InversePower, Geometric };
  Kind kind = Kind::Zero;
  Rational coef = 0;
  unsigned power = 0;
  Rational ratio = 0;
};

/// Sign of a term that holds for every n >= from. A zero sign means the
/// term vanishes identically from `from` on.
struct EventualSign {
  int sign = 0;
  unsigned long from = 1;
};

/// Geometric monomials are evaluated exactly only up to this index.
inline constexpr unsigned long kExactIndexLimit = 1ul << 22;

class ClosedFormTerm {
public:
  ClosedFormTerm() = default;
  explicit ClosedFormTerm(std::vector<Monomial> terms) : terms_(std::move(terms)) { canonicalize(); }
  static ClosedFormTerm constant(const Rational& c) { return ClosedFormTerm({Monomial::constant(c)}); }

  const std::vector<Monomial>& monomials() const { return terms_; }

  Rational limit() const {
    Rational l = 0;
    for (const auto& m : terms_)
      if (m.kind == Monomial::Kind::Constant) l += m.coef;
    return l;
  }

  bool is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Monomial& m) { return m.kind == Monomial::Kind::Constant; });
  }
  bool is_geometric_only() const {
    return std::none_of(terms_.begin(), terms_.end(),
                        [](const Monomial& m) { return m.kind == Monomial::Kind::InversePower; });
  }

  Rational operator()(unsigned long n) const {
    Rational v = 0;
    for (const auto& m : terms_) v += value_of(m, n);
    return v;
  }

  ClosedFormTerm operator+(const ClosedFormTerm& o) const {
    std::vector<Monomial> v(terms_);
    v.insert(v.end(), o.terms_.begin(), o.terms_.end());
    return ClosedFormTerm(std::move(v));
  }
  ClosedFormTerm operator-() const { return scaled(Rational(-1)); }
  ClosedFormTerm operator-(const ClosedFormTerm& o) const { return *this + (-o); }
  ClosedFormTerm operator+(const Rational& c) const { return *this + constant(c); }
  ClosedFormTerm operator-(const Rational& c) const { return *this + constant(-c); }

  ClosedFormTerm scaled(const Rational& c) const {
    std::vector<Monomial> v(terms_);
    for (auto& m : v) m.coef *= c;
    return ClosedFormTerm(std::move(v));
  }

  /// n -> term(n + s).
  ClosedFormTerm shifted(unsigned s) const {
    std::vector<Monomial> v(terms_);
    for (auto& m : v) {
      if (m.kind == Monomial::Kind::Geometric) m.coef *= limitlab::pow(m.ratio, s);
      if (m.kind == Monomial::Kind::InversePower) m.shift += s;
    }
    return ClosedFormTerm(std::move(v));
  }

  bool operator==(const ClosedFormTerm& o) const { return terms_ == o.terms_; }
  bool operator!=(const ClosedFormTerm& o) const { return !(*this == o); }

  /// Sign of term(n) - x. Uses a long double filter with a rigorous error
  /// margin and falls back to exact evaluation.
  int compare_at(unsigned long n, const Rational& x) const {
    long double approx = -static_cast<long double>(x.get_d());
    long double err = std::fabs(approx) * 1e-15L + 1e-4000L;
    for (const auto& m : terms_) {
      long double c = m.coef.get_d();
      long double v = 0;
      switch (m.kind) {
        case Monomial::Kind::Constant: v = c; break;
        case Monomial::Kind::Geometric:
          v = c * std::pow(static_cast<long double>(m.ratio.get_d()), static_cast<long double>(n));
          break;
        case Monomial::Kind::InversePower:
          v = c / std::pow(static_cast<long double>(n + m.shift), static_cast<long double>(m.power));
          break;
      }
      approx += v;
      long double rel = m.kind == Monomial::Kind::Geometric ? static_cast<long double>(n) + 64.0L
                                                            : static_cast<long double>(m.power) + 8.0L;
      err += std::fabs(v) * rel * 1e-15L;
    }
    if (approx > err) return 1;
    if (approx < -err) return -1;
    if (n <= kExactIndexLimit) return sgn((*this)(n) - x);
    return compare_far(n, x);
  }

  EventualSign eventual_sign(unsigned long start = 1) const;
  Asymptotic leading_behavior() const;

private:
  // Large n: the geometric part is too big to evaluate, so bound it and
  // decide by the exact remainder.
  int compare_far(unsigned long n, const Rational& x) const;

  static Rational value_of(const Monomial& m, unsigned long n) {
    switch (m.kind) {
      case Monomial::Kind::Constant: return m.coef;
      case Monomial::Kind::Geometric:
        if (n > kExactIndexLimit && abs_value(m.ratio) != 1 && m.ratio != 0)
          throw RangeError("index " + std::to_string(n) + " too large for exact evaluation");
        return m.coef * limitlab::pow(m.ratio, n);
      case Monomial::Kind::InversePower:
        return m.coef / limitlab::pow(Rational(static_cast<long>(n + m.shift)), m.power);
    }
    return 0;
  }

  void canonicalize() {
    std::vector<Monomial> out;
    for (const auto& m : terms_) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Monomial& o) { return o.same_shape(m); });
      if (it == out.end())
        out.push_back(m);
      else
        it->coef += m.coef;
    }
    std::erase_if(out, [](const Monomial& m) { return m.coef == 0; });
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
      if (a.kind != b.kind) return a.kind < b.kind;
      if (a.power != b.power) return a.power < b.power;
      if (a.shift != b.shift) return a.shift < b.shift;
      return a.ratio > b.ratio;
    });
    terms_ = std::move(out);
  }

  std::vector<Monomial> terms_;
};

namespace detail {

// Upper bound on r^n for 0 < r < 1.
inline Rational pow_upper(const Rational& r, unsigned long n) {
  if (n <= 32) return limitlab::pow(r, n);
  Rational result = 1, base = r;
  while (n > 0) {
    if (n & 1) result = round_up(result * base, 160);
    base = round_up(base * base, 160);
    n >>= 1;
  }
  return result;
}

inline Rational abs_sum_scaled(const Poly& p, int degree, const Rational& n) {
  // sum_i |c_i| n^(i - degree)
  Rational s = 0;
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    const auto& c = p.coefficients()[i];
    if (c == 0) continue;
    long e = static_cast<long>(i) - degree;
    Rational f = e >= 0 ? limitlab::pow(n, e) : Rational(1) / limitlab::pow(n, -e);
    s += abs_value(c) * f;
  }
  return s;
}

// Smallest N >= lower such that lead(n) dominates all other summands for
// every n >= N, where the expression is lead(n) + rest(n) + sum_j r_j^n q_j(n).
inline unsigned long domination_threshold(const Poly& lead_and_rest,
                                          const std::vector<std::pair<Rational, Poly>>& geometric,
                                          unsigned long lower) {
  const int d = lead_and_rest.degree();
  Rational lc = abs_value(lead_and_rest.leading());
  std::vector<Rational> low(lead_and_rest.coefficients().begin(), lead_and_rest.coefficients().end() - 1);
  Poly rest{std::move(low)};
  auto dominates = [&](unsigned long n) {
    Rational nn(static_cast<long>(n));
    Rational rhs = abs_sum_scaled(rest, d, nn);
    for (const auto& [r, q] : geometric) {
      int excess = q.degree() - d;
      // r^n n^excess is decreasing once (1 + 1/n)^excess r < 1
      if (excess > 0 && limitlab::pow(Rational(1) + Rational(1) / nn, excess) * r >= 1) return false;
      rhs += pow_upper(r, n) * abs_sum_scaled(q, d, nn);
    }
    return rhs < lc;
  };
  unsigned long n = std::max(lower, 1ul);
  if (dominates(n)) return n;
  for (unsigned long lo = n; n <= (1ul << 44); lo = n, n *= 2) {
    if (!dominates(n)) continue;
    while (n - lo > 1) {
      unsigned long mid = lo + (n - lo) / 2;
      if (dominates(mid))
        n = mid;
      else
        lo = mid;
    }
    return n;
  }
  throw RangeError("closed-form term asymptotics too slow to certify");
}

}  // namespace detail

inline int ClosedFormTerm::compare_far(unsigned long n, const Rational& x) const {
  Rational rest = -x, bound = 0;
  const Monomial* geo = nullptr;
  int geo_count = 0;
  for (const auto& m : terms_) {
    if (m.kind != Monomial::Kind::Geometric) {
      rest += value_of(m, n);
      continue;
    }
    Rational r = abs_value(m.ratio);
    if (r >= 1) throw RangeError("cannot certify comparison at index " + std::to_string(n));
    bound += abs_value(m.coef) * detail::pow_upper(r, n);
    geo = &m;
    ++geo_count;
  }
  if (geo_count == 0 || abs_value(rest) > bound) return sgn(rest);
  if (rest == 0 && geo_count == 1) return sgn(geo->coef) * (geo->ratio < 0 && n % 2 == 1 ? -1 : 1);
  throw RangeError("cannot certify comparison at index " + std::to_string(n));
}

inline EventualSign ClosedFormTerm::eventual_sign(unsigned long start) const {
  start = std::max(start, 1ul);
  // Multiply by prod_s (n+s)^K_s > 0 to turn every inverse power into a
  // polynomial: term * M = P(n) + sum_r r^n Q_r(n).
  std::map<unsigned, unsigned> max_power;
  for (const auto& m : terms_)
    if (m.kind == Monomial::Kind::InversePower) max_power[m.shift] = std::max(max_power[m.shift], m.power);
  auto linear = [](unsigned s) { return Poly({Rational(static_cast<long>(s)), Rational(1)}); };
  Poly multiplier = Poly::constant(1);
  for (auto [s, k] : max_power) multiplier = multiplier * linear(s).pow(k);
  Poly polynomial_part;
  std::map<Rational, Poly, std::greater<>> geometric_parts;
  for (const auto& m : terms_) {
    switch (m.kind) {
      case Monomial::Kind::Constant: polynomial_part = polynomial_part + multiplier.scaled(m.coef); break;
      case Monomial::Kind::Geometric:
        geometric_parts[m.ratio] = geometric_parts[m.ratio] + multiplier.scaled(m.coef);
        break;
      case Monomial::Kind::InversePower: {
        Poly f = Poly::constant(m.coef);
        for (auto [s, k] : max_power) f = f * linear(s).pow(s == m.shift ? k - m.power : k);
        polynomial_part = polynomial_part + f;
        break;
      }
    }
  }
  std::erase_if(geometric_parts, [](const auto& kv) { return kv.second.is_zero(); });

  int sign = 0;
  unsigned long threshold = start;
  if (!polynomial_part.is_zero()) {
    sign = sgn(polynomial_part.leading());
    std::vector<std::pair<Rational, Poly>> geo(geometric_parts.begin(), geometric_parts.end());
    threshold = detail::domination_threshold(polynomial_part, geo, start);
  } else if (!geometric_parts.empty()) {
    auto dominant = geometric_parts.begin();
    sign = sgn(dominant->second.leading());
    std::vector<std::pair<Rational, Poly>> geo;
    for (auto it = std::next(dominant); it != geometric_parts.end(); ++it)
      geo.emplace_back(it->first / dominant->first, it->second);
    threshold = detail::domination_threshold(dominant->second, geo, start);
  } else {
    return {0, start};
  }
  unsigned long from = start;
  for (unsigned long n = threshold; n > start; --n) {
    if (threshold - n > (1ul << 22)) throw RangeError("closed-form prefix too long to enumerate");
    if (compare_at(n - 1, Rational(0)) != sign) {
      from = n;
      break;
    }
  }
  return {sign, std::max(from, start)};
}

inline Asymptotic ClosedFormTerm::leading_behavior() const {
  // Expand every c/(n+s)^k as sum_j c * binom(-k, j) s^j / n^(k+j) and find
  // the smallest order with a nonzero total coefficient.
  unsigned max_order = 0;
  for (const auto& m : terms_)
    if (m.kind == Monomial::Kind::InversePower) max_order = std::max(max_order, m.power);
  if (max_order > 0) {
    for (unsigned order = 1; order <= max_order + 64; ++order) {
      Rational total = 0;
      for (const auto& m : terms_) {
        if (m.kind != Monomial::Kind::InversePower || m.power > order) continue;
        unsigned j = order - m.power;
        // binom(-k, j) = (-1)^j binom(k + j - 1, j)
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), m.power + j - 1, j);
        Rational term = m.coef * Rational(b) * limitlab::pow(Rational(static_cast<long>(m.shift)), j);
        total += (j % 2 == 0) ? term : Rational(-term);
      }
      if (total != 0) return {Asymptotic::Kind::InversePower, total, order, 0};
    }
  }
  for (const auto& m : terms_)  // sorted by decreasing ratio
    if (m.kind == Monomial::Kind::Geometric) {
      Rational total = 0;
      for (const auto& o : terms_)
        if (o.kind == Monomial::Kind::Geometric && o.ratio == m.ratio) total += o.coef;
      if (total != 0) return {Asymptotic::Kind::Geometric, total, 0, m.ratio};
    }
  return {};
}

}  // namespace limitlab
