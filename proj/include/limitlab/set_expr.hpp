#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "limitlab/atoms.hpp"

namespace limitlab {

/// Symbolic subset of R: atoms combined by n-ary union, intersection and
/// difference. Difference{a, b, c} means (a \ b) \ c.
class SetExpr {
public:
  enum class Op { Leaf, Union, Intersection, Difference };

  SetExpr() : atom_(EmptyAtom{}) {}
  SetExpr(SetAtom atom) : atom_(std::move(atom)) {}  // NOLINT(google-explicit-constructor)

  static SetExpr node(Op op, std::vector<SetExpr> children) {
    SetExpr e;
    e.op_ = op;
    e.children_ = std::move(children);
    return e;
  }

  static SetExpr empty() { return SetExpr(EmptyAtom{}); }
  static SetExpr real_line() { return SetExpr(IntervalAtom{Interval::real_line()}); }
  static SetExpr interval(const Interval& iv) { return SetExpr(IntervalAtom{iv}); }
  static SetExpr points(std::vector<Rational> pts) { return SetExpr(make_points(std::move(pts))); }
  static SetExpr rationals(const Interval& iv) { return SetExpr(RationalsAtom{iv}); }
  static SetExpr cantor(const Rational& offset = 0, const Rational& scale = 1) {
    if (scale == 0) throw RangeError("cantor scale must be nonzero");
    return SetExpr(CantorAtom{CantorMap{offset, scale}});
  }
  static SetExpr sequence(const ClosedFormTerm& t, unsigned long start = 1) { return SetExpr(SequenceAtom(t, start)); }
  static SetExpr family(const ClosedFormTerm& lo, const ClosedFormTerm& hi, unsigned long start = 1,
                        bool lo_included = true, bool hi_included = false) {
    return SetExpr(FamilyAtom(lo, hi, lo_included, hi_included, start));
  }
  /// (a - delta, a + delta) without a.
  static SetExpr punctured_window(const Rational& a, const Rational& delta) {
    return node(Op::Union, {interval(Interval::open(a - delta, a)), interval(Interval::open(a, a + delta))});
  }

  Op op() const { return op_; }
  bool is_leaf() const { return op_ == Op::Leaf; }
  const SetAtom& atom() const { return atom_; }
  const std::vector<SetExpr>& children() const { return children_; }

  bool operator==(const SetExpr& o) const {
    if (op_ != o.op_) return false;
    if (op_ == Op::Leaf) return atom_ == o.atom_;
    return children_ == o.children_;
  }
  bool operator!=(const SetExpr& o) const { return !(*this == o); }

private:
  Op op_ = Op::Leaf;
  SetAtom atom_;
  std::vector<SetExpr> children_;
};

inline SetExpr operator|(const SetExpr& a, const SetExpr& b) { return SetExpr::node(SetExpr::Op::Union, {a, b}); }
inline SetExpr operator&(const SetExpr& a, const SetExpr& b) {
  return SetExpr::node(SetExpr::Op::Intersection, {a, b});
}
inline SetExpr operator-(const SetExpr& a, const SetExpr& b) { return SetExpr::node(SetExpr::Op::Difference, {a, b}); }

inline SetExpr union_of(std::vector<SetExpr> parts) {
  if (parts.empty()) return SetExpr::empty();
  if (parts.size() == 1) return parts.front();
  return SetExpr::node(SetExpr::Op::Union, std::move(parts));
}

}  // namespace limitlab
