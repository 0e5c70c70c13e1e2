#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace limitlab {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& q) { return sgn(q); }

/// Renders in lowest terms: "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return make_rational(num, den);
}

inline Integer floor_integer(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Integer ceil_integer(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Rational power_of_two(long exponent) {
  Integer one = 1;
  Integer p;
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? make_rational(Integer(1), p) : Rational(p);
}

/// Largest multiple of 2^-bits that is <= q.
inline Rational round_down(const Rational& q, unsigned bits) {
  Rational scaled = q * power_of_two(bits);
  return Rational(floor_integer(scaled)) / power_of_two(bits);
}

/// Smallest multiple of 2^-bits that is >= q.
inline Rational round_up(const Rational& q, unsigned bits) {
  Rational scaled = q * power_of_two(bits);
  return Rational(ceil_integer(scaled)) / power_of_two(bits);
}

/// Parses "p", "p/q", or a finite decimal such as "-0.25". Surrounding
/// whitespace is not accepted.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  std::size_t end = digits(i);
  if (end == i) return std::nullopt;
  Integer whole(std::string(text.substr(i, end - i)));
  Rational value(whole);
  if (end < text.size() && text[end] == '/') {
    std::size_t dend = digits(end + 1);
    if (dend == end + 1 || dend != text.size()) return std::nullopt;
    Integer den(std::string(text.substr(end + 1, dend - end - 1)));
    if (den == 0) return std::nullopt;
    value = make_rational(whole, den);
  } else if (end < text.size() && text[end] == '.') {
    std::size_t fend = digits(end + 1);
    if (fend == end + 1 || fend != text.size()) return std::nullopt;
    std::string frac(text.substr(end + 1, fend - end - 1));
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = make_rational(whole * scale + Integer(frac), scale);
  } else if (end != text.size()) {
    return std::nullopt;
  }
  return negative ? Rational(-value) : value;
}

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace limitlab
