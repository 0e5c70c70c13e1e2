#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "limitlab/print.hpp"
#include "limitlab/set_expr.hpp"

namespace limitlab {

/// Base set of a Cell. Full is the whole real line.
struct FullBase {
  bool operator==(const FullBase&) const { return true; }
};
struct PointsBase {
  std::vector<Rational> points;  // sorted, distinct
  bool operator==(const PointsBase& o) const { return points == o.points; }
};
using CellBase = std::variant<FullBase, PointsBase, CantorAtom, SequenceAtom, FamilyAtom>;

/// base ∩ clip, further restricted to Q when rational_only is set.
struct Cell {
  CellBase base = FullBase{};
  Interval clip = Interval::real_line();
  bool rational_only = false;

  bool is_full() const { return std::holds_alternative<FullBase>(base); }
  bool is_points() const { return std::holds_alternative<PointsBase>(base); }
  bool is_cantor() const { return std::holds_alternative<CantorAtom>(base); }
  bool is_sequence() const { return std::holds_alternative<SequenceAtom>(base); }
  bool is_family() const { return std::holds_alternative<FamilyAtom>(base); }
  const std::vector<Rational>& points() const { return std::get<PointsBase>(base).points; }
  const CantorMap& cantor() const { return std::get<CantorAtom>(base).map; }
  const SequenceAtom& sequence() const { return std::get<SequenceAtom>(base); }
  const FamilyAtom& family() const { return std::get<FamilyAtom>(base); }

  /// Exact membership. Every probe is rational, so rational_only never
  /// excludes it.
  bool contains(const Rational& x) const {
    if (!clip.contains(x)) return false;
    return std::visit(
        [&](const auto& b) -> bool {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, FullBase>) return true;
          else if constexpr (std::is_same_v<T, PointsBase>)
            return std::binary_search(b.points.begin(), b.points.end(), x);
          else if constexpr (std::is_same_v<T, CantorAtom>) return b.map.contains(x);
          else return b.contains(x);
        },
        base);
  }

  bool operator==(const Cell& o) const {
    return base == o.base && clip == o.clip && rational_only == o.rational_only;
  }

  static Cell full(const Interval& clip, bool rational = false) { return {FullBase{}, clip, rational}; }
  static Cell points_cell(std::vector<Rational> pts) {
    return {PointsBase{make_points(std::move(pts)).points}, Interval::real_line(), false};
  }
};

/// base minus the union of the holes.
struct Piece {
  Cell base;
  std::vector<Cell> holes;

  bool contains(const Rational& x) const {
    if (!base.contains(x)) return false;
    return std::none_of(holes.begin(), holes.end(), [&](const Cell& h) { return h.contains(x); });
  }
  bool operator==(const Piece& o) const { return base == o.base && holes == o.holes; }
};

/// Finite union of pieces, canonically ordered.
struct NormalForm {
  std::vector<Piece> pieces;

  bool contains(const Rational& x) const {
    return std::any_of(pieces.begin(), pieces.end(), [&](const Piece& p) { return p.contains(x); });
  }
  bool empty() const { return pieces.empty(); }
  bool operator==(const NormalForm& o) const { return pieces == o.pieces; }
};

namespace detail {

// Does the clip contain (l, l + eta) (side > 0) or (l - eta, l) for some eta > 0?
inline bool clip_accumulates(const Interval& clip, const Rational& l, int side) {
  if (side > 0) {
    bool lo_ok = clip.lo().infinite || clip.lo().value <= l;
    bool hi_ok = clip.hi().infinite || clip.hi().value > l;
    return lo_ok && hi_ok;
  }
  bool lo_ok = clip.lo().infinite || clip.lo().value < l;
  bool hi_ok = clip.hi().infinite || clip.hi().value >= l;
  return lo_ok && hi_ok;
}

// Index from which sequence terms miss a clip that does not accumulate at
// the limit from the approach side.
inline unsigned long sequence_exit_index(const SequenceAtom& s, const Interval& clip) {
  if (s.side() == 0) return s.ordered_from();
  const Rational& l = s.limit();
  if (s.side() > 0 && !clip.lo().infinite && clip.lo().value > l) return s.tail_start_within(clip.lo().value);
  if (s.side() < 0 && !clip.hi().infinite && clip.hi().value < l) return s.tail_start_within(clip.hi().value);
  return s.ordered_from();
}

inline unsigned long family_exit_index(const FamilyAtom& f, const Interval& clip) {
  const Rational& l = f.limit();
  if (f.side() > 0 && !clip.lo().infinite && clip.lo().value > l) return f.tail_start_within(clip.lo().value);
  if (f.side() < 0 && !clip.hi().infinite && clip.hi().value < l) return f.tail_start_within(clip.hi().value);
  return f.ordered_from();
}

constexpr unsigned long kMaterializeLimit = 2000000;

inline void check_materialize(unsigned long from, unsigned long to) {
  if (to > from && to - from > kMaterializeLimit)
    throw RangeError("too many family or sequence members to enumerate (" + std::to_string(to - from) + ")");
}

// Members [from, to) intersected with clip, merged.
inline std::vector<Interval> family_members(const FamilyAtom& f, unsigned long from, unsigned long to,
                                            const Interval& clip) {
  // ordered members before the one straddling the far clip edge miss the clip
  const Endpoint& far = f.side() > 0 ? clip.hi() : clip.lo();
  if (to > f.ordered_from() && !far.infinite && f.side() * (far.value - f.limit()) > 0) {
    bool prefix_meets = false;
    for (unsigned long n = from; n < std::min(to, f.ordered_from()) && !prefix_meets; ++n)
      prefix_meets = f.member(n).intersects(clip);
    if (!prefix_meets) {
      unsigned long enter = f.tail_start_within(far.value);
      from = std::max({from, f.ordered_from(), std::min(enter > 0 ? enter - 1 : 0, to)});
    }
  }
  check_materialize(from, to);
  std::vector<Interval> out;
  for (unsigned long n = from; n < to; ++n) {
    Interval m = f.member(n).intersect(clip);
    if (!m.is_empty()) out.push_back(m);
  }
  return merge_intervals(std::move(out));
}

// Does the union of members [start, ordered_from) cover a one-sided
// neighbourhood of the limit on the approach side?
inline bool prefix_covers_limit(const FamilyAtom& f) {
  auto prefix = family_members(f, f.start(), f.ordered_from(), Interval::real_line());
  return std::any_of(prefix.begin(), prefix.end(),
                     [&](const Interval& iv) { return clip_accumulates(iv, f.limit(), f.side()); });
}

}  // namespace detail

/// Canonical cells making up one cell: empty clips vanish, degenerate
/// intervals become points, Cantor cells that miss the interior of their
/// clip and non-accumulating sequences or families are enumerated.
inline std::vector<Cell> simplify_cell(Cell c) {
  std::vector<Cell> out;
  if (c.clip.is_empty()) return out;
  if (c.is_full()) {
    if (c.clip.is_degenerate()) out.push_back(Cell::points_cell({c.clip.lo().value}));
    else out.push_back(c);
    return out;
  }
  if (c.is_points()) {
    std::vector<Rational> kept;
    for (const auto& x : c.points())
      if (c.clip.contains(x)) kept.push_back(x);
    if (!kept.empty()) out.push_back(Cell::points_cell(std::move(kept)));
    return out;
  }
  if (c.is_cantor()) {
    c.clip = c.clip.intersect(c.cantor().hull());
    if (c.clip.is_empty()) return out;
    Interval interior = Interval::open(c.clip.lo().value, c.clip.hi().value);
    if (!cantor_meets_interval(c.cantor(), interior)) {
      std::vector<Rational> pts;
      for (const Endpoint* e : {&c.clip.lo(), &c.clip.hi()})
        if (e->included && c.cantor().contains(e->value)) pts.push_back(e->value);
      if (!pts.empty()) out.push_back(Cell::points_cell(std::move(pts)));
      return out;
    }
    out.push_back(c);
    return out;
  }
  if (c.is_sequence()) {
    const SequenceAtom& s = c.sequence();
    c.rational_only = false;  // terms are rational anyway
    if (s.side() != 0 && detail::clip_accumulates(c.clip, s.limit(), s.side())) {
      out.push_back(c);
      return out;
    }
    unsigned long stop = detail::sequence_exit_index(s, c.clip);
    detail::check_materialize(s.start(), stop);
    std::vector<Rational> pts;
    for (unsigned long n = s.start(); n < stop; ++n) {
      Rational v = s.term()(n);
      if (c.clip.contains(v)) pts.push_back(v);
    }
    if (s.side() == 0 && c.clip.contains(s.limit())) pts.push_back(s.limit());
    if (!pts.empty()) out.push_back(Cell::points_cell(std::move(pts)));
    return out;
  }
  const FamilyAtom& f = c.family();
  bool acc = detail::clip_accumulates(c.clip, f.limit(), f.side());
  if (acc && !detail::prefix_covers_limit(f)) {
    out.push_back(c);
    return out;
  }
  unsigned long stop;
  if (acc) {
    // the own prefix swallows the tail near the limit
    stop = f.ordered_from();
    Rational eta = 1;
    for (const auto& iv : detail::family_members(f, f.start(), f.ordered_from(), Interval::real_line()))
      if (detail::clip_accumulates(iv, f.limit(), f.side())) {
        const Endpoint& far = f.side() > 0 ? iv.hi() : iv.lo();
        if (!far.infinite) eta = min_of(eta, abs_value(far.value - f.limit()));
      }
    stop = f.tail_start_within(f.limit() + f.side() * eta);
  } else {
    stop = detail::family_exit_index(f, c.clip);
  }
  for (const auto& iv : detail::family_members(f, f.start(), stop, c.clip)) {
    auto cells = simplify_cell(Cell::full(iv, c.rational_only));
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

namespace detail {

inline bool same_base(const Cell& a, const Cell& b) { return a.base == b.base; }

inline std::string kind_name(const Cell& c) {
  if (c.is_cantor()) return "cantor";
  if (c.is_sequence()) return "seq";
  if (c.is_family()) return "family";
  if (c.is_points()) return "points";
  return c.rational_only ? "rationals" : "interval";
}

[[noreturn]] inline void unsupported(const Cell& a, const Cell& b, const char* what) {
  throw UnsupportedIntersection(std::string(what) + " of " + kind_name(a) + " and " + kind_name(b) +
                                " atoms is not supported");
}

}  // namespace detail

/// Exact intersection of two cells (as canonical cells).
inline std::vector<Cell> intersect_cells(const Cell& a, const Cell& b) {
  Interval clip = a.clip.intersect(b.clip);
  if (clip.is_empty()) return {};
  bool rational = a.rational_only || b.rational_only;
  if (a.is_points() || b.is_points()) {
    const Cell& p = a.is_points() ? a : b;
    const Cell& o = a.is_points() ? b : a;
    std::vector<Rational> kept;
    for (const auto& x : p.points())
      if (clip.contains(x) && o.contains(x)) kept.push_back(x);
    return simplify_cell(Cell::points_cell(std::move(kept)));
  }
  if (a.is_full() || b.is_full() || detail::same_base(a, b)) {
    const Cell& o = a.is_full() ? b : a;
    return simplify_cell(Cell{o.base, clip, rational});
  }
  // two thin atoms of different kinds: enumerate whichever becomes finite
  auto sa = simplify_cell(Cell{a.base, clip, a.rational_only});
  auto sb = simplify_cell(Cell{b.base, clip, b.rational_only});
  bool reduced = !(sa.size() == 1 && sa[0].base == a.base) || !(sb.size() == 1 && sb[0].base == b.base);
  if (!reduced) detail::unsupported(a, b, "intersection");
  std::vector<Cell> out;
  for (const auto& x : sa)
    for (const auto& y : sb) {
      auto part = intersect_cells(x, y);
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

inline std::vector<Piece> subtract_cell(const Piece& p, const Cell& hole);

/// Canonical pieces of base minus holes.
inline std::vector<Piece> make_pieces(const Cell& base, const std::vector<Cell>& holes) {
  std::vector<Piece> cur;
  for (auto& c : simplify_cell(base)) cur.push_back(Piece{c, {}});
  for (const auto& h : holes) {
    std::vector<Piece> next;
    for (const auto& p : cur) {
      auto part = subtract_cell(p, h);
      next.insert(next.end(), part.begin(), part.end());
    }
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

inline std::vector<Piece> split_clip(const Piece& p, const Interval& cut) {
  std::vector<Piece> out;
  for (const auto& part : p.base.clip.subtract(cut)) {
    Cell b = p.base;
    b.clip = part;
    auto pieces = make_pieces(b, p.holes);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

inline std::vector<Piece> add_hole(Piece p, Cell h) {
  if (h.is_points()) {
    std::vector<Rational> pts;
    for (const auto& x : h.points())
      if (p.contains(x)) pts.push_back(x);
    if (pts.empty()) return {p};
    for (auto& old : p.holes)
      if (old.is_points()) {
        pts.insert(pts.end(), old.points().begin(), old.points().end());
        old = Cell::points_cell(std::move(pts));
        return {p};
      }
    p.holes.push_back(Cell::points_cell(std::move(pts)));
    return {p};
  }
  if (std::find(p.holes.begin(), p.holes.end(), h) != p.holes.end()) return {p};
  if (h.is_family())
    for (const auto& old : p.holes)
      if (old.is_family() && !(old.family() == h.family()))
        throw UnsupportedIntersection("a set minus two different interval families is not supported");
  p.holes.push_back(std::move(h));
  std::sort(p.holes.begin(), p.holes.end(), [](const Cell& x, const Cell& y) {
    return kind_name(x) + interval_text(x.clip) < kind_name(y) + interval_text(y.clip);
  });
  return {p};
}

}  // namespace detail

/// p minus one cell, following the difference rule table.
inline std::vector<Piece> subtract_cell(const Piece& p, const Cell& hole) {
  Cell h = hole;
  h.clip = h.clip.intersect(p.base.clip);
  auto parts = simplify_cell(h);
  if (parts.size() != 1 || !(parts[0].base == h.base)) {
    std::vector<Piece> cur{p};
    for (const auto& c : parts) {
      std::vector<Piece> next;
      for (const auto& q : cur) {
        auto r = subtract_cell(q, c);
        next.insert(next.end(), r.begin(), r.end());
      }
      cur = std::move(next);
    }
    return cur;
  }
  h = parts[0];
  const Cell& b = p.base;
  if (b.is_points()) {
    std::vector<Rational> kept;
    for (const auto& x : b.points())
      if (!h.contains(x)) kept.push_back(x);
    if (kept.empty()) return {};
    return {Piece{Cell::points_cell(std::move(kept)), {}}};
  }
  if (h.is_points()) return detail::add_hole(p, h);
  if (h.is_full() || detail::same_base(b, h)) {
    if (!h.rational_only || b.rational_only || b.is_sequence()) return detail::split_clip(p, h.clip);
    return detail::add_hole(p, h);
  }
  if (b.is_full()) return detail::add_hole(p, h);
  if (b.is_family() && h.is_sequence()) return detail::add_hole(p, h);
  detail::unsupported(b, h, "difference");
}

namespace detail {

inline std::vector<Piece> leaf_pieces(const SetAtom& atom) {
  return std::visit(
      [](const auto& a) -> std::vector<Piece> {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, EmptyAtom>) {
          return {};
        } else if constexpr (std::is_same_v<T, IntervalAtom>) {
          return make_pieces(Cell::full(a.interval), {});
        } else if constexpr (std::is_same_v<T, RationalsAtom>) {
          return make_pieces(Cell::full(a.interval, true), {});
        } else if constexpr (std::is_same_v<T, PointsAtom>) {
          return make_pieces(Cell::points_cell(a.points), {});
        } else if constexpr (std::is_same_v<T, CantorAtom>) {
          return make_pieces(Cell{a, Interval::real_line(), false}, {});
        } else if constexpr (std::is_same_v<T, SequenceAtom>) {
          return make_pieces(Cell{a, Interval::real_line(), false}, {});
        } else {
          if (a.tail() == FamilyAtom::Tail::Gapped) return make_pieces(Cell{a, Interval::real_line(), false}, {});
          // touching or overlapping members: a finite union of intervals
          auto ivs = family_members(a, a.start(), a.ordered_from(), Interval::real_line());
          ivs.push_back(a.tail_hull());
          std::vector<Piece> out;
          for (const auto& iv : merge_intervals(ivs)) {
            auto p = make_pieces(Cell::full(iv), {});
            out.insert(out.end(), p.begin(), p.end());
          }
          return out;
        }
      },
      atom);
}

inline std::vector<Piece> intersect_pieces(const Piece& p, const Piece& q) {
  std::vector<Piece> out;
  std::vector<Cell> holes = p.holes;
  holes.insert(holes.end(), q.holes.begin(), q.holes.end());
  for (const auto& c : intersect_cells(p.base, q.base)) {
    auto part = make_pieces(c, holes);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// p \ (B \ H1 \ H2 ...) = (p \ B) ∪ ⋃_j (p ∩ B ∩ Hj)
inline std::vector<Piece> subtract_piece(const Piece& p, const Piece& q) {
  std::vector<Piece> out = subtract_cell(p, q.base);
  for (const auto& h : q.holes)
    for (const auto& c : intersect_cells(q.base, h)) {
      auto part = intersect_pieces(p, Piece{c, {}});
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

}  // namespace detail

inline std::string piece_text(const Piece& p);

/// Merges points and hole-free intervals, drops duplicates and sorts.
inline NormalForm canonicalize(std::vector<Piece> pieces) {
  std::vector<Rational> pts;
  std::vector<Interval> fat, rat;
  std::vector<Piece> rest;
  for (auto& p : pieces) {
    if (p.base.is_points()) {
      pts.insert(pts.end(), p.base.points().begin(), p.base.points().end());
    } else if (p.base.is_full() && p.holes.empty()) {
      (p.base.rational_only ? rat : fat).push_back(p.base.clip);
    } else {
      rest.push_back(std::move(p));
    }
  }
  fat = merge_intervals(std::move(fat));
  rat = merge_intervals(std::move(rat));
  // rational intervals inside real intervals are redundant
  std::vector<Interval> rat_left;
  for (const auto& r : rat) {
    std::vector<Interval> parts{r};
    for (const auto& f : fat) {
      std::vector<Interval> next;
      for (const auto& x : parts) {
        auto s = x.subtract(f);
        next.insert(next.end(), s.begin(), s.end());
      }
      parts = std::move(next);
    }
    rat_left.insert(rat_left.end(), parts.begin(), parts.end());
  }
  std::vector<Piece> out;
  for (const auto& iv : fat) {
    auto c = simplify_cell(Cell::full(iv));
    for (auto& x : c)
      if (x.is_full()) out.push_back(Piece{x, {}});
      else pts.insert(pts.end(), x.points().begin(), x.points().end());
  }
  for (const auto& iv : rat_left) {
    auto c = simplify_cell(Cell::full(iv, true));
    for (auto& x : c)
      if (x.is_full()) out.push_back(Piece{x, {}});
      else pts.insert(pts.end(), x.points().begin(), x.points().end());
  }
  std::vector<Rational> kept;
  for (const auto& x : pts) {
    bool covered = std::any_of(out.begin(), out.end(), [&](const Piece& p) { return p.contains(x); });
    if (!covered) kept.push_back(x);
  }
  if (!kept.empty()) out.push_back(Piece{Cell::points_cell(std::move(kept)), {}});
  for (auto& p : rest)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  std::vector<std::pair<std::string, Piece>> keyed;
  for (auto& p : out) keyed.emplace_back(piece_text(p), std::move(p));
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    int c = Interval::compare_lo(x.second.base.clip.lo(), y.second.base.clip.lo());
    if (c != 0) return c < 0;
    return x.first < y.first;
  });
  NormalForm nf;
  for (auto& [k, p] : keyed) nf.pieces.push_back(std::move(p));
  return nf;
}

inline NormalForm normal_form(const SetExpr& e) {
  using Op = SetExpr::Op;
  switch (e.op()) {
    case Op::Leaf:
      return canonicalize(detail::leaf_pieces(e.atom()));
    case Op::Union: {
      std::vector<Piece> all;
      for (const auto& c : e.children()) {
        auto nf = normal_form(c);
        all.insert(all.end(), nf.pieces.begin(), nf.pieces.end());
      }
      return canonicalize(std::move(all));
    }
    case Op::Intersection: {
      std::vector<Piece> cur = normal_form(e.children().front()).pieces;
      for (std::size_t i = 1; i < e.children().size(); ++i) {
        auto rhs = normal_form(e.children()[i]);
        std::vector<Piece> next;
        for (const auto& p : cur)
          for (const auto& q : rhs.pieces) {
            auto part = detail::intersect_pieces(p, q);
            next.insert(next.end(), part.begin(), part.end());
          }
        cur = canonicalize(std::move(next)).pieces;
      }
      return canonicalize(std::move(cur));
    }
    case Op::Difference: {
      std::vector<Piece> cur = normal_form(e.children().front()).pieces;
      for (std::size_t i = 1; i < e.children().size(); ++i) {
        auto rhs = normal_form(e.children()[i]);
        for (const auto& q : rhs.pieces) {
          std::vector<Piece> next;
          for (const auto& p : cur) {
            auto part = detail::subtract_piece(p, q);
            next.insert(next.end(), part.begin(), part.end());
          }
          cur = std::move(next);
        }
        cur = canonicalize(std::move(cur)).pieces;
      }
      return canonicalize(std::move(cur));
    }
  }
  return {};
}

inline SetExpr cell_expr(const Cell& c) {
  if (c.is_full())
    return c.rational_only ? SetExpr::rationals(c.clip) : SetExpr::interval(c.clip);
  if (c.is_points()) return SetExpr::points(c.points());
  SetExpr base = std::visit(
      [](const auto& b) -> SetExpr {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FullBase> || std::is_same_v<T, PointsBase>) return SetExpr::empty();
        else return SetExpr(SetAtom(b));
      },
      c.base);
  std::vector<SetExpr> parts{base};
  bool clip_implied = c.clip.is_real_line() || (c.is_cantor() && c.clip == c.cantor().hull());
  if (c.rational_only) parts.push_back(SetExpr::rationals(c.clip));
  else if (!clip_implied) parts.push_back(SetExpr::interval(c.clip));
  if (parts.size() == 1) return base;
  return SetExpr::node(SetExpr::Op::Intersection, std::move(parts));
}

inline SetExpr piece_expr(const Piece& p) {
  if (p.holes.empty()) return cell_expr(p.base);
  std::vector<SetExpr> parts{cell_expr(p.base)};
  for (const auto& h : p.holes) parts.push_back(cell_expr(h));
  return SetExpr::node(SetExpr::Op::Difference, std::move(parts));
}

inline std::string piece_text(const Piece& p) { return set_text(piece_expr(p)); }

inline SetExpr to_expr(const NormalForm& nf) {
  std::vector<SetExpr> parts;
  for (const auto& p : nf.pieces) parts.push_back(piece_expr(p));
  return union_of(std::move(parts));
}

/// Equivalent expression in normal form: a union of pieces, each an atom
/// clipped by one interval minus irreducible holes.
inline SetExpr normalize(const SetExpr& e) { return to_expr(normal_form(e)); }

inline bool contains(const SetExpr& e, const Rational& x) {
  using Op = SetExpr::Op;
  switch (e.op()) {
    case Op::Leaf:
      return atom_contains(e.atom(), x);
    case Op::Union:
      return std::any_of(e.children().begin(), e.children().end(), [&](const SetExpr& c) { return contains(c, x); });
    case Op::Intersection:
      return std::all_of(e.children().begin(), e.children().end(), [&](const SetExpr& c) { return contains(c, x); });
    case Op::Difference:
      if (!contains(e.children().front(), x)) return false;
      return std::none_of(e.children().begin() + 1, e.children().end(), [&](const SetExpr& c) { return contains(c, x); });
  }
  return false;
}

}  // namespace limitlab
