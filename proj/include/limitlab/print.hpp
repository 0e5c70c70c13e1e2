#pragma once

#include <string>

#include "limitlab/poly.hpp"
#include "limitlab/set_expr.hpp"

namespace limitlab {

inline std::string endpoint_text(const Endpoint& e, bool is_lo) {
  if (e.infinite) return is_lo ? "-inf" : "inf";
  return to_string(e.value);
}

/// "[a,b)" style; the real line prints as "R".
inline std::string interval_text(const Interval& iv) {
  if (iv.is_real_line()) return "R";
  std::string s = iv.lo().included ? "[" : "(";
  s += endpoint_text(iv.lo(), true) + "," + endpoint_text(iv.hi(), false);
  s += iv.hi().included ? "]" : ")";
  return s;
}

inline std::string term_text(const ClosedFormTerm& t) {
  std::string out;
  for (const auto& m : t.monomials()) {
    Rational c = m.coef;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs_value(c);
    switch (m.kind) {
      case Monomial::Kind::Constant:
        out += to_string(c);
        break;
      case Monomial::Kind::Geometric:
        if (c != 1) out += to_string(c) + "*";
        out += "(" + to_string(m.ratio) + ")^n";
        break;
      case Monomial::Kind::InversePower:
        out += to_string(c) + "/";
        out += m.shift == 0 ? "n" : "(n+" + std::to_string(m.shift) + ")";
        if (m.power != 1) out += "^" + std::to_string(m.power);
        break;
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string poly_text(const Poly& p) {
  std::string out;
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Rational v = c[i];
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += v < 0 ? " - " : " + ";
    }
    v = abs_value(v);
    if (i == 0) {
      out += to_string(v);
      continue;
    }
    if (v != 1) out += to_string(v) + "*";
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

inline std::string atom_text(const SetAtom& atom) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, EmptyAtom>) {
          return "empty";
        } else if constexpr (std::is_same_v<T, IntervalAtom>) {
          return interval_text(a.interval);
        } else if constexpr (std::is_same_v<T, PointsAtom>) {
          if (a.points.empty()) return "empty";
          std::string s = "points(";
          for (std::size_t i = 0; i < a.points.size(); ++i) s += (i ? "," : "") + to_string(a.points[i]);
          return s + ")";
        } else if constexpr (std::is_same_v<T, RationalsAtom>) {
          return "Q(" + interval_text(a.interval) + ")";
        } else if constexpr (std::is_same_v<T, CantorAtom>) {
          return "cantor(" + to_string(a.map.offset) + "," + to_string(a.map.scale) + ")";
        } else if constexpr (std::is_same_v<T, SequenceAtom>) {
          std::string s = "seq(" + term_text(a.term()) + ")";
          // not part of the input grammar: only appears in rendered traces
          if (a.start() > 1) s += "{n>=" + std::to_string(a.start()) + "}";
          return s;
        } else {
          std::string s = "family(" + term_text(a.lo()) + ", " + term_text(a.hi()) + ")";
          if (a.start() > 1) s += "{n>=" + std::to_string(a.start()) + "}";
          return s;
        }
      },
      atom);
}

namespace detail {
inline const char* op_symbol(SetExpr::Op op) {
  switch (op) {
    case SetExpr::Op::Union: return " | ";
    case SetExpr::Op::Intersection: return " & ";
    case SetExpr::Op::Difference: return " \\ ";
    default: return "";
  }
}
}  // namespace detail

/// Text in the input grammar. Composite children are parenthesised, so
/// parsing the text reproduces the same tree.
inline std::string set_text(const SetExpr& e) {
  if (e.is_leaf()) return atom_text(e.atom());
  std::string out;
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    const SetExpr& c = e.children()[i];
    if (i) out += detail::op_symbol(e.op());
    out += c.is_leaf() ? set_text(c) : "(" + set_text(c) + ")";
  }
  return out;
}

}  // namespace limitlab
