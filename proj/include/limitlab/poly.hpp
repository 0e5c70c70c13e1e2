#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/rational.hpp"

namespace limitlab {

/// Dense univariate polynomial with rational coefficients, constant term
/// first. Trailing zeros are always trimmed; the zero polynomial has no
/// coefficients and degree -1.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly identity() { return Poly({Rational(0), Rational(1)}); }
  static Poly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
  }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const { return coefficient(0); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coefficient(i) + o.coefficient(i);
    return Poly(std::move(v));
  }
  Poly operator-() const {
    std::vector<Rational> v(coeffs_);
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(v));
  }
  Poly scaled(const Rational& c) const {
    std::vector<Rational> v(coeffs_);
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
  }
  Poly pow(unsigned e) const {
    Poly out = constant(1);
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Poly(std::move(v));
  }

  /// Coefficients of t -> p(a + t).
  Poly shifted(const Rational& a) const {
    Poly out;
    Poly base({a, Rational(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * base + constant(*it);
    return out;
  }

  /// Euclidean division; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    std::vector<Rational> rem(coeffs_);
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<Rational> quo(coeffs_.size() - d.coeffs_.size() + 1);
    const Rational& lc = d.coeffs_.back();
    for (int k = degree() - d.degree(); k >= 0; --k) {
      Rational c = rem[k + d.degree()] / lc;
      quo[k] = c;
      if (c == 0) continue;
      for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= c * d.coeffs_[j];
    }
    rem.resize(d.coeffs_.size() - 1);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  Poly monic() const { return is_zero() ? *this : scaled(Rational(1) / leading()); }

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly square_free_part(const Poly& p) {
  if (p.degree() <= 1) return p.monic();
  Poly g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

/// Sum over i of |c_i| for the Taylor coefficients of degree >= 1 at a.
/// For |x - a| <= 1 this bounds |p(x) - p(a)| / |x - a|.
inline Rational lipschitz_bound(const Poly& p, const Rational& a) {
  Poly t = p.shifted(a);
  Rational b = 0;
  for (std::size_t i = 1; i < t.coefficients().size(); ++i) b += abs_value(t.coefficients()[i]);
  return b;
}

/// A real root known either exactly (lo == hi) or up to an open
/// enclosure (lo, hi) containing exactly one root of the polynomial.
struct RootEnclosure {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

namespace detail {

inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

inline int sign_variations(std::span<const Poly> chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline std::vector<Integer> divisors(const Integer& n, const Integer& limit) {
  std::vector<Integer> small, large;
  Integer m = abs(n);
  if (m == 0 || m > limit) return {};
  for (Integer d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      small.push_back(d);
      if (d * d != m) large.push_back(m / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Integer coefficients proportional to p.
inline std::vector<Integer> integer_coefficients(const Poly& p) {
  Integer lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& c : p.coefficients()) {
    Rational scaled = c * lcm;
    out.push_back(scaled.get_num());
  }
  return out;
}

}  // namespace detail

/// Distinct rational roots found through the rational root theorem. Only
/// attempted while the relevant coefficients stay below 10^12.
inline std::vector<Rational> rational_roots(const Poly& p) {
  std::vector<Rational> roots;
  if (p.is_zero() || p.degree() == 0) return roots;
  Poly q = square_free_part(p);
  std::vector<Integer> ic = detail::integer_coefficients(q);
  std::size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low + 1 >= ic.size()) return roots;
  const Integer limit("1000000000000");
  auto ps = detail::divisors(ic[low], limit);
  auto qs = detail::divisors(ic.back(), limit);
  if (ps.empty() || qs.empty()) return roots;
  for (const auto& num : ps)
    for (const auto& den : qs)
      for (int s : {1, -1}) {
        Rational cand = make_rational(Integer(num * s), den);
        if (q(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Isolates all real roots of p. Rational roots are reported exactly when
/// the rational root theorem finds them; the rest are bisected until the
/// enclosure is no wider than `width` and contains none of `avoid`.
inline std::vector<RootEnclosure> isolate_roots(const Poly& p, const Rational& width,
                                                std::span<const Rational> avoid = {}) {
  std::vector<RootEnclosure> out;
  if (p.is_zero() || p.degree() == 0) return out;
  Poly rest = square_free_part(p);
  for (const auto& r : rational_roots(p)) {
    out.push_back({r, r});
    rest = rest.divmod(Poly({-r, Rational(1)})).first;
  }
  if (rest.degree() >= 1) {
    auto chain = detail::sturm_chain(rest);
    Rational bound = 1;
    for (const auto& c : rest.coefficients()) bound = max_of(bound, abs_value(c / rest.leading()));
    bound += 1;
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      int n = detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
      if (n == 0) continue;
      if (n == 1) {
        isolated.emplace_back(lo, hi);
        continue;
      }
      Rational mid = (lo + hi) / 2;
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
    }
    for (auto [lo, hi] : isolated) {
      // rest has no rational roots, so no bisection point is ever a root
      auto needs_work = [&](const Rational& l, const Rational& h) {
        if (h - l > width) return true;
        for (const auto& x : avoid)
          if (l <= x && x <= h) return true;
        for (const auto& e : out)
          if (l <= e.lo && e.lo <= h) return true;
        return false;
      };
      while (needs_work(lo, hi)) {
        Rational mid = (lo + hi) / 2;
        if (sgn(rest(lo)) * sgn(rest(mid)) < 0)
          hi = mid;
        else
          lo = mid;
      }
      out.push_back({lo, hi});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootEnclosure& a, const RootEnclosure& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace limitlab
