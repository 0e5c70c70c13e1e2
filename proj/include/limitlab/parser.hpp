#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "limitlab/funcdsl.hpp"
#include "limitlab/print.hpp"

namespace limitlab {

namespace detail {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  SetExpr set() { return union_chain(); }

  PiecewiseFn fn() {
    expect_word("piecewise");
    expect('{');
    PiecewiseFn f;
    while (!peek_word("else")) {
      Poly p = poly();
      expect_word("on");
      SetExpr g = set();
      expect(';');
      f.branches.push_back(Branch{std::move(g), std::move(p)});
    }
    expect_word("else");
    f.fallback = poly();
    expect('}');
    if (peek_word("on")) {
      expect_word("on");
      f.domain = set();
    }
    return f;
  }

  void finish() {
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_, col_);
  }

  void advance() {
    unsigned char c = static_cast<unsigned char>(text_[pos_++]);
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_next() const {
    // character after the current one, no skipping
    return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
    advance();
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string_view word_at() {
    skip();
    std::size_t e = pos_;
    while (e < text_.size() && ident_char(text_[e])) ++e;
    return text_.substr(pos_, e - pos_);
  }

  bool peek_word(std::string_view w) {
    if (!std::isalpha(static_cast<unsigned char>(peek()))) return false;
    return word_at() == w;
  }

  void expect_word(std::string_view w) {
    if (!peek_word(w)) fail("expected '" + std::string(w) + "'");
    for (std::size_t i = 0; i < w.size(); ++i) advance();
  }

  // digits [ "." digits | "/" digits ]; a "/" not followed by a digit is
  // left alone (it may start "/n").
  Rational unsigned_number() {
    skip();
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t b = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      return pos_ > b;
    };
    if (!digits()) fail(pos_ < text_.size() ? "expected a number" : "expected a number but input ended");
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      if (!digits()) fail("expected digits after '.'");
    } else if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      advance();
      digits();
    }
    auto r = parse_rational(text_.substr(start, pos_ - start));
    if (!r) fail("malformed number");
    return *r;
  }

  Rational rat() {
    char c = peek();
    bool neg = false;
    if (c == '-' || c == '+') {
      neg = c == '-';
      advance();
    }
    Rational v = unsigned_number();
    return neg ? Rational(-v) : v;
  }

  unsigned long small_int() {
    skip();
    std::size_t b = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ == b) fail("expected an integer");
    std::string s(text_.substr(b, pos_ - b));
    if (s.size() > 9) fail("integer too large");
    return std::stoul(s);
  }

  // RAT, or "-inf" as a lower and "inf" as an upper end
  Endpoint endpoint(bool included, bool is_lo) {
    char c = peek();
    if ((c == '-' || c == '+') && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'i') {
      if ((c == '-') != is_lo) fail(is_lo ? "expected '-inf'" : "expected 'inf'");
      advance();
      expect_word("inf");
      return Endpoint::unbounded();
    }
    if (peek_word("inf")) {
      if (is_lo) fail("expected '-inf'");
      expect_word("inf");
      return Endpoint::unbounded();
    }
    return Endpoint{rat(), false, included};
  }

  Interval interval() {
    char open = peek();
    if (open != '[' && open != '(') fail("expected '[' or '('");
    advance();
    Endpoint lo = endpoint(open == '[', true);
    expect(',');
    Endpoint hi = endpoint(false, false);
    char close = peek();
    if (close != ']' && close != ')') {
      if (pos_ >= text_.size()) fail("expected ']' or ')' but input ended");
      fail("expected ']' or ')'");
    }
    advance();
    if (!hi.infinite) hi.included = close == ']';
    if (lo.infinite && open == '[') fail("an infinite endpoint cannot be closed");
    if (hi.infinite && close == ']') fail("an infinite endpoint cannot be closed");
    return Interval(lo, hi);
  }

  // After "(": an interval starts with a number, a sign or "inf".
  bool paren_starts_interval() {
    std::size_t save_pos = pos_;
    int save_line = line_, save_col = col_;
    advance();
    char c = peek();
    bool r = std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || peek_word("inf");
    pos_ = save_pos;
    line_ = save_line;
    col_ = save_col;
    return r;
  }

  ClosedFormTerm term() {
    std::vector<Monomial> ms;
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '-' || c == '+') {
        sign = c == '-' ? -1 : 1;
        advance();
      } else if (!first) {
        break;
      }
      first = false;
      c = peek();
      Rational coef = 1;
      bool have_coef = false;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef = unsigned_number();
        have_coef = true;
      }
      coef *= sign;
      if (have_coef && accept('*')) {
        if (peek() != '(') fail("expected '(' for a geometric ratio");
      }
      if (peek() == '(') {
        advance();
        Rational r = rat();
        expect(')');
        expect('^');
        if (peek() != 'n') fail("expected 'n'");
        advance();
        if (r <= 0 || r >= 1) throw RangeError("geometric ratio " + to_string(r) + " is outside (0,1)");
        ms.push_back(Monomial::geometric(coef, r));
      } else if (have_coef && peek() == '/') {
        advance();
        unsigned shift = 0;
        if (accept('(')) {
          if (peek() != 'n') fail("expected 'n'");
          advance();
          expect('+');
          shift = static_cast<unsigned>(small_int());
          expect(')');
        } else {
          if (peek() != 'n') fail("expected 'n'");
          advance();
        }
        unsigned power = 1;
        if (accept('^')) power = static_cast<unsigned>(small_int());
        if (power == 0) fail("inverse power must be positive");
        ms.push_back(Monomial::inverse_power(coef, power, shift));
      } else if (have_coef) {
        ms.push_back(Monomial::constant(coef));
      } else {
        fail("expected a term");
      }
    }
    return ClosedFormTerm(std::move(ms));
  }

  unsigned long start_suffix() {
    if (peek() != '{') return 1;
    advance();
    if (peek() != 'n') fail("expected 'n'");
    advance();
    expect('>');
    expect('=');
    unsigned long n = small_int();
    expect('}');
    return n;
  }

  SetExpr primary() {
    char c = peek();
    if (c == '[') return SetExpr::interval(interval());
    if (c == '(') {
      if (paren_starts_interval()) return SetExpr::interval(interval());
      advance();
      SetExpr inner = set();
      expect(')');
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      if (pos_ >= text_.size()) fail("expected a set but input ended");
      fail("expected a set");
    }
    int line = line_, col = col_;
    std::string w(word_at());
    if (w == "empty" || w == "R") {
      expect_word(w);
      return w == "R" ? SetExpr::real_line() : SetExpr::empty();
    }
    if (w == "Q") {
      expect_word(w);
      expect('(');
      if (peek_word("R")) {
        expect_word("R");
        expect(')');
        return SetExpr::rationals(Interval::real_line());
      }
      Interval iv = interval();
      expect(')');
      return SetExpr::rationals(iv);
    }
    if (w == "cantor") {
      expect_word(w);
      expect('(');
      Rational off = rat();
      expect(',');
      Rational scale = rat();
      expect(')');
      return SetExpr::cantor(off, scale);
    }
    if (w == "points") {
      expect_word(w);
      expect('(');
      std::vector<Rational> pts{rat()};
      while (accept(',')) pts.push_back(rat());
      expect(')');
      return SetExpr::points(std::move(pts));
    }
    if (w == "seq") {
      expect_word(w);
      expect('(');
      ClosedFormTerm t = term();
      expect(')');
      return SetExpr::sequence(t, start_suffix());
    }
    if (w == "family") {
      expect_word(w);
      expect('(');
      ClosedFormTerm lo = term();
      expect(',');
      ClosedFormTerm hi = term();
      expect(')');
      return SetExpr::family(lo, hi, start_suffix());
    }
    throw UnknownAtom("unknown set atom '" + w + "' at line " + std::to_string(line) + ", column " +
                      std::to_string(col));
  }

  template <class Next>
  SetExpr chain(SetExpr::Op op, char symbol, Next next) {
    std::vector<SetExpr> parts{(this->*next)()};
    while (accept(symbol)) parts.push_back((this->*next)());
    if (parts.size() == 1) return std::move(parts.front());
    return SetExpr::node(op, std::move(parts));
  }

  SetExpr intersection_chain() { return chain(SetExpr::Op::Intersection, '&', &Parser::primary); }
  SetExpr difference_chain() { return chain(SetExpr::Op::Difference, '\\', &Parser::intersection_chain); }
  SetExpr union_chain() { return chain(SetExpr::Op::Union, '|', &Parser::difference_chain); }

  Poly poly() {
    std::vector<Rational> coeffs;
    auto add = [&](std::size_t deg, const Rational& c) {
      if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
      coeffs[deg] += c;
    };
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '-' || c == '+') {
        sign = c == '-' ? -1 : 1;
        advance();
      } else if (!first) {
        break;
      }
      first = false;
      c = peek();
      Rational coef = 1;
      bool have_coef = false;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef = unsigned_number();
        have_coef = true;
        if (accept('*') && peek() != 'x') fail("expected 'x'");
      }
      std::size_t deg = 0;
      if (peek() == 'x' && !ident_char(peek_next())) {
        advance();
        deg = 1;
        if (accept('^')) deg = small_int();
      } else if (!have_coef) {
        if (pos_ >= text_.size()) fail("expected a polynomial but input ended");
        fail("expected a polynomial");
      }
      add(deg, sign * coef);
    }
    return Poly(std::move(coeffs));
  }
};

}  // namespace detail

/// Parses a set in the text grammar; `#` starts a comment.
inline SetExpr parse_set(std::string_view text) {
  detail::Parser p(text);
  SetExpr s = p.set();
  p.finish();
  return s;
}

inline PiecewiseFn parse_fn(std::string_view text) {
  detail::Parser p(text);
  PiecewiseFn f = p.fn();
  p.finish();
  return f;
}

inline std::string fn_text(const PiecewiseFn& f) {
  std::string s = "piecewise { ";
  for (const auto& b : f.branches) s += poly_text(b.value) + " on " + set_text(b.guard) + "; ";
  s += "else " + poly_text(f.fallback) + " }";
  if (!(f.domain == SetExpr::real_line())) s += " on " + set_text(f.domain);
  return s;
}

}  // namespace limitlab
