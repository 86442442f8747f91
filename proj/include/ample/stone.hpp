#ifndef AMPLE_STONE_HPP
#define AMPLE_STONE_HPP

// Compact open subsets of the two supported unit spaces:
//  - finite(n): the discrete space {0, ..., n-1};
//  - shift(k):  the one-sided full shift {1..k}^N, whose basic clopens are
//               cylinders wX for finite words w over the digits '1'..'k'.
//
// A Clopen is kept in a canonical form (sorted point list, or a maximally
// merged prefix antichain of cylinder words) so that set equality is
// structural equality.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ample {

class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnitSpace {
 public:
  enum class Kind { finite, shift };

  static UnitSpace finite(int n) {
    if (n < 1) throw std::invalid_argument("finite space needs n >= 1");
    return UnitSpace(Kind::finite, n);
  }
  static UnitSpace shift(int k) {
    if (k < 2 || k > 9) throw std::invalid_argument("shift space needs 2 <= k <= 9");
    return UnitSpace(Kind::shift, k);
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_shift() const { return kind_ == Kind::shift; }
  /// Number of points (finite) or alphabet size (shift).
  int size() const { return size_; }

  char letter(int i) const { return static_cast<char>('1' + i); }
  bool valid_word(std::string_view w) const {
    return std::all_of(w.begin(), w.end(), [&](char c) { return c >= '1' && c < '1' + size_; });
  }

  std::string describe() const {
    return (is_finite() ? "finite(" : "shift(") + std::to_string(size_) + ")";
  }

  friend bool operator==(const UnitSpace&, const UnitSpace&) = default;

 private:
  UnitSpace(Kind kind, int size) : kind_(kind), size_(size) {}
  Kind kind_;
  int size_;
};

inline void require_same_space(const UnitSpace& a, const UnitSpace& b) {
  if (!(a == b)) throw SpaceMismatch("mismatched spaces: " + a.describe() + " vs " + b.describe());
}

/// A basic clopen: a single point of a finite space, or a cylinder wX.
struct Cell {
  int point = -1;
  std::string word;

  static Cell at(int p) { return Cell{p, {}}; }
  static Cell cylinder(std::string w) { return Cell{-1, std::move(w)}; }

  int depth() const { return static_cast<int>(word.size()); }
  std::string to_string() const { return point >= 0 ? std::to_string(point) : "\"" + word + "\""; }

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline bool is_prefix(std::string_view a, std::string_view b) {
  return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

/// b ⊆ a for two cells of the same space.
inline bool cell_contains(const Cell& a, const Cell& b) {
  return a.point >= 0 ? a.point == b.point : is_prefix(a.word, b.word);
}

inline bool cells_intersect(const Cell& a, const Cell& b) {
  return a.point >= 0 ? a.point == b.point : (is_prefix(a.word, b.word) || is_prefix(b.word, a.word));
}

inline void validate_cell(const UnitSpace& space, const Cell& c) {
  if (space.is_finite()) {
    if (c.point < 0 || c.point >= space.size() || !c.word.empty())
      throw std::invalid_argument("cell " + c.to_string() + " out of range for " + space.describe());
  } else if (c.point >= 0 || !space.valid_word(c.word)) {
    throw std::invalid_argument("cell " + c.to_string() + " out of range for " + space.describe());
  }
}

namespace detail {

using WordIt = std::vector<std::string>::const_iterator;

// [first, last) are sorted words that all extend `prefix`.
inline std::vector<std::string> merge_node(const UnitSpace& space, const std::string& prefix, WordIt first,
                                           WordIt last) {
  if (first == last) return {};
  if (first->size() == prefix.size()) return {prefix};
  std::vector<std::string> out;
  bool all_full = true;
  const std::size_t at = prefix.size();
  for (int i = 0; i < space.size(); ++i) {
    const char c = space.letter(i);
    auto lo = std::find_if(first, last, [&](const std::string& w) { return w[at] == c; });
    auto hi = std::find_if(lo, last, [&](const std::string& w) { return w[at] != c; });
    std::string child = prefix + c;
    auto sub = merge_node(space, child, lo, hi);
    if (!(sub.size() == 1 && sub.front() == child)) all_full = false;
    out.insert(out.end(), sub.begin(), sub.end());
  }
  if (all_full) return {prefix};
  return out;
}

inline std::vector<std::string> complement_node(const UnitSpace& space, const std::string& prefix, WordIt first,
                                                WordIt last) {
  if (first == last) return {prefix};
  if (first->size() == prefix.size()) return {};
  std::vector<std::string> out;
  const std::size_t at = prefix.size();
  for (int i = 0; i < space.size(); ++i) {
    const char c = space.letter(i);
    auto lo = std::find_if(first, last, [&](const std::string& w) { return w[at] == c; });
    auto hi = std::find_if(lo, last, [&](const std::string& w) { return w[at] != c; });
    auto sub = complement_node(space, prefix + c, lo, hi);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace detail

class Clopen {
 public:
  explicit Clopen(UnitSpace space) : space_(space) {}

  /// Canonical clopen for the union of `cells`. Idempotent.
  static Clopen of(const UnitSpace& space, std::vector<Cell> cells) {
    for (const auto& c : cells) validate_cell(space, c);
    Clopen out(space);
    if (space.is_finite()) {
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      out.cells_ = std::move(cells);
      return out;
    }
    std::vector<std::string> words;
    words.reserve(cells.size());
    for (auto& c : cells) words.push_back(std::move(c.word));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (auto& w : detail::merge_node(space, "", words.begin(), words.end()))
      out.cells_.push_back(Cell::cylinder(std::move(w)));
    return out;
  }

  static Clopen whole(const UnitSpace& space) {
    if (space.is_shift()) return of(space, {Cell::cylinder("")});
    std::vector<Cell> all;
    for (int p = 0; p < space.size(); ++p) all.push_back(Cell::at(p));
    return of(space, std::move(all));
  }

  static Clopen cylinders(const UnitSpace& space, const std::vector<std::string>& words) {
    std::vector<Cell> cells;
    for (const auto& w : words) cells.push_back(Cell::cylinder(w));
    return of(space, std::move(cells));
  }

  static Clopen points(const UnitSpace& space, const std::vector<int>& pts) {
    std::vector<Cell> cells;
    for (int p : pts) cells.push_back(Cell::at(p));
    return of(space, std::move(cells));
  }

  static Clopen single(const UnitSpace& space, const Cell& c) { return of(space, {c}); }

  const UnitSpace& space() const { return space_; }
  const std::vector<Cell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  bool is_whole() const { return *this == whole(space_); }

  /// Longest cylinder word (0 for finite spaces and for the empty set).
  int depth() const {
    int d = 0;
    for (const auto& c : cells_) d = std::max(d, c.depth());
    return d;
  }

  /// c ⊆ this.
  bool contains(const Cell& c) const {
    if (space_.is_finite()) return std::binary_search(cells_.begin(), cells_.end(), c);
    return std::any_of(cells_.begin(), cells_.end(), [&](const Cell& a) { return is_prefix(a.word, c.word); });
  }

  bool intersects(const Cell& c) const {
    return std::any_of(cells_.begin(), cells_.end(), [&](const Cell& a) { return cells_intersect(a, c); });
  }

  /// Points of the cell at a given depth; `depth` must be at least depth().
  std::vector<std::string> expand(int depth) const;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < cells_.size(); ++i) s += (i ? "," : "") + cells_[i].to_string();
    return s + "}";
  }

  friend bool operator==(const Clopen& a, const Clopen& b) { return a.space_ == b.space_ && a.cells_ == b.cells_; }
  friend bool operator<(const Clopen& a, const Clopen& b) { return a.cells_ < b.cells_; }

 private:
  UnitSpace space_;
  std::vector<Cell> cells_;
};

/// All words of length `length` over the space alphabet, in lexicographic order.
inline std::vector<std::string> all_words(const UnitSpace& space, int length) {
  std::vector<std::string> out{""};
  for (int d = 0; d < length; ++d) {
    std::vector<std::string> next;
    next.reserve(out.size() * space.size());
    for (const auto& w : out)
      for (int i = 0; i < space.size(); ++i) next.push_back(w + space.letter(i));
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::string> Clopen::expand(int depth) const {
  if (space_.is_finite()) throw std::invalid_argument("expand applies to shift spaces");
  if (depth < this->depth()) throw std::invalid_argument("expansion depth below clopen depth");
  std::vector<std::string> out;
  for (const auto& c : cells_) {
    for (const auto& tail : all_words(space_, depth - c.depth())) out.push_back(c.word + tail);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Clopen unite(const Clopen& a, const Clopen& b) {
  require_same_space(a.space(), b.space());
  std::vector<Cell> cells = a.cells();
  cells.insert(cells.end(), b.cells().begin(), b.cells().end());
  return Clopen::of(a.space(), std::move(cells));
}

inline Clopen intersect(const Clopen& a, const Clopen& b) {
  require_same_space(a.space(), b.space());
  std::vector<Cell> cells;
  if (a.space().is_finite()) {
    std::set_intersection(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                          std::back_inserter(cells));
  } else {
    for (const auto& x : a.cells())
      for (const auto& y : b.cells()) {
        if (is_prefix(x.word, y.word)) cells.push_back(y);
        else if (is_prefix(y.word, x.word)) cells.push_back(x);
      }
  }
  return Clopen::of(a.space(), std::move(cells));
}

inline Clopen complement(const Clopen& a) {
  const auto& space = a.space();
  if (space.is_finite()) {
    std::vector<Cell> cells;
    for (int p = 0; p < space.size(); ++p)
      if (!a.contains(Cell::at(p))) cells.push_back(Cell::at(p));
    return Clopen::of(space, std::move(cells));
  }
  std::vector<std::string> words;
  for (const auto& c : a.cells()) words.push_back(c.word);
  return Clopen::cylinders(space, detail::complement_node(space, "", words.begin(), words.end()));
}

inline Clopen subtract(const Clopen& a, const Clopen& b) {
  require_same_space(a.space(), b.space());
  return intersect(a, complement(b));
}

enum class BoolOp { unite, intersect, difference, complement };

inline Clopen boolean(BoolOp op, const Clopen& a, const std::optional<Clopen>& b = std::nullopt) {
  if ((op == BoolOp::complement) != !b.has_value())
    throw std::invalid_argument("second operand must be absent exactly for complement");
  switch (op) {
    case BoolOp::unite: return unite(a, *b);
    case BoolOp::intersect: return intersect(a, *b);
    case BoolOp::difference: return subtract(a, *b);
    case BoolOp::complement: return complement(a);
  }
  throw std::logic_error("unreachable");
}

inline bool is_subset(const Clopen& a, const Clopen& b) { return subtract(a, b).empty(); }
inline bool disjoint(const Clopen& a, const Clopen& b) { return intersect(a, b).empty(); }

enum class Relation { equal, subset, superset, disjoint, overlapping };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::subset: return "subset";
    case Relation::superset: return "superset";
    case Relation::disjoint: return "disjoint";
    case Relation::overlapping: return "overlapping";
  }
  return "?";
}

struct Comparison {
  Relation relation;
  bool first_empty;
  bool second_empty;
};

/// Precedence when several relations hold (e.g. with an empty argument):
/// equal, subset, superset, disjoint.
inline Comparison compare(const Clopen& a, const Clopen& b) {
  require_same_space(a.space(), b.space());
  Comparison out{Relation::overlapping, a.empty(), b.empty()};
  const bool ab = is_subset(a, b), ba = is_subset(b, a);
  if (ab && ba) out.relation = Relation::equal;
  else if (ab) out.relation = Relation::subset;
  else if (ba) out.relation = Relation::superset;
  else if (disjoint(a, b)) out.relation = Relation::disjoint;
  return out;
}

/// A partition of the whole unit space into cells such that every input
/// clopen is a union of partition cells.
struct Refinement {
  std::vector<Cell> cells;
  /// cover[f][i]: indices into `cells` whose union is families[f][i].
  std::vector<std::vector<std::vector<std::size_t>>> cover;
};

namespace detail {

inline void split_adaptive(const UnitSpace& space, const std::string& prefix, std::span<const Clopen> inputs,
                           std::vector<Cell>& out) {
  const Cell here = Cell::cylinder(prefix);
  for (const auto& c : inputs) {
    if (c.contains(here) || !c.intersects(here)) continue;
    for (int i = 0; i < space.size(); ++i) split_adaptive(space, prefix + space.letter(i), inputs, out);
    return;
  }
  out.push_back(here);
}

}  // namespace detail

/// Coarsest cylinder partition of the whole space that refines every input:
/// a cell is split only while some input neither contains nor misses it, so
/// no cell is deeper than the deepest input cell.
inline std::vector<Cell> refine(const UnitSpace& space, std::span<const Clopen> inputs) {
  for (const auto& c : inputs) require_same_space(space, c.space());
  std::vector<Cell> cells;
  if (space.is_finite()) {
    for (int p = 0; p < space.size(); ++p) cells.push_back(Cell::at(p));
    return cells;
  }
  detail::split_adaptive(space, "", inputs, cells);
  return cells;
}

inline Refinement common_refinement(const UnitSpace& space, const std::vector<std::vector<Clopen>>& families) {
  std::vector<Clopen> flat;
  for (const auto& fam : families) flat.insert(flat.end(), fam.begin(), fam.end());
  Refinement r;
  r.cells = refine(space, flat);
  for (const auto& fam : families) {
    auto& cov = r.cover.emplace_back();
    for (const auto& c : fam) {
      auto& idx = cov.emplace_back();
      for (std::size_t j = 0; j < r.cells.size(); ++j)
        if (c.contains(r.cells[j])) idx.push_back(j);
    }
  }
  return r;
}

/// A function on the unit space that is constant on the cells of a finite
/// clopen partition, with finite support. Pieces are disjoint cells with
/// nonzero values; sibling cylinders sharing a value are always merged, so
/// equal functions have equal representations.
template <class T>
class LocallyConstant {
 public:
  explicit LocallyConstant(UnitSpace space) : space_(space) {}

  /// Sum of value·1_cell over possibly overlapping terms.
  static LocallyConstant from_terms(const UnitSpace& space, const std::vector<std::pair<Cell, T>>& terms) {
    LocallyConstant out(space);
    for (const auto& [c, v] : terms) validate_cell(space, c);
    if (space.is_finite()) {
      std::vector<T> values(space.size(), T(0));
      for (const auto& [c, v] : terms) values[c.point] += v;
      for (int p = 0; p < space.size(); ++p)
        if (values[p] != T(0)) out.pieces_.emplace_back(Cell::at(p), values[p]);
      return out;
    }
    std::vector<const std::pair<Cell, T>*> ptrs;
    for (const auto& t : terms) ptrs.push_back(&t);
    auto node = out.build("", T(0), ptrs);
    for (auto& p : node.pieces)
      if (p.second != T(0)) out.pieces_.push_back(std::move(p));
    return out;
  }

  static LocallyConstant indicator(const Clopen& c, const T& value = T(1)) {
    std::vector<std::pair<Cell, T>> terms;
    for (const auto& cell : c.cells()) terms.emplace_back(cell, value);
    return from_terms(c.space(), terms);
  }

  const UnitSpace& space() const { return space_; }
  const std::vector<std::pair<Cell, T>>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

  int depth() const {
    int d = 0;
    for (const auto& p : pieces_) d = std::max(d, p.first.depth());
    return d;
  }

  Clopen support() const {
    std::vector<Cell> cells;
    for (const auto& p : pieces_) cells.push_back(p.first);
    return Clopen::of(space_, std::move(cells));
  }

  /// Value on a cell; throws if the function is not constant there.
  T at(const Cell& c) const {
    for (const auto& [cell, v] : pieces_) {
      if (cell_contains(cell, c)) return v;
      if (cells_intersect(cell, c)) throw std::domain_error("function not constant on cell " + c.to_string());
    }
    return T(0);
  }

  /// Distinct values together with their level sets (zero excluded).
  std::vector<std::pair<T, Clopen>> level_sets() const {
    std::vector<std::pair<T, Clopen>> out;
    for (const auto& [cell, v] : pieces_) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == v; });
      if (it == out.end()) out.emplace_back(v, Clopen::single(space_, cell));
      else it->second = unite(it->second, Clopen::single(space_, cell));
    }
    return out;
  }

  friend LocallyConstant operator+(const LocallyConstant& a, const LocallyConstant& b) {
    require_same_space(a.space_, b.space_);
    auto terms = a.pieces_;
    terms.insert(terms.end(), b.pieces_.begin(), b.pieces_.end());
    return from_terms(a.space_, terms);
  }

  LocallyConstant scaled(const T& s) const {
    auto terms = pieces_;
    for (auto& t : terms) t.second *= s;
    return from_terms(space_, terms);
  }

  friend LocallyConstant operator-(const LocallyConstant& a, const LocallyConstant& b) {
    return a + b.scaled(T(-1));
  }

  /// Pointwise product.
  friend LocallyConstant operator*(const LocallyConstant& a, const LocallyConstant& b) {
    require_same_space(a.space_, b.space_);
    std::vector<std::pair<Cell, T>> terms;
    for (const auto& [ca, va] : a.pieces_)
      for (const auto& [cb, vb] : b.pieces_) {
        if (!cells_intersect(ca, cb)) continue;
        terms.emplace_back(cell_contains(ca, cb) ? cb : ca, va * vb);
      }
    return from_terms(a.space_, terms);
  }

  friend bool operator==(const LocallyConstant& a, const LocallyConstant& b) {
    return a.space_ == b.space_ && a.pieces_ == b.pieces_;
  }

 private:
  struct Node {
    bool leaf;
    T value;
    std::vector<std::pair<Cell, T>> pieces;
  };

  // `deeper` holds terms whose cell lies strictly inside or equals `prefix`;
  // `inherited` accumulates terms covering all of `prefix`.
  Node build(const std::string& prefix, T inherited, const std::vector<const std::pair<Cell, T>*>& deeper) const {
    std::vector<const std::pair<Cell, T>*> strict;
    for (const auto* t : deeper) {
      if (t->first.word.size() == prefix.size()) inherited += t->second;
      else strict.push_back(t);
    }
    if (strict.empty()) return Node{true, inherited, {{Cell::cylinder(prefix), inherited}}};
    Node out{false, T(0), {}};
    std::optional<T> common;
    bool mergeable = true;
    for (int i = 0; i < space_.size(); ++i) {
      const char c = space_.letter(i);
      std::vector<const std::pair<Cell, T>*> sub;
      for (const auto* t : strict)
        if (t->first.word[prefix.size()] == c) sub.push_back(t);
      Node child = build(prefix + c, inherited, sub);
      if (!child.leaf || (common && *common != child.value)) mergeable = false;
      if (!common) common = child.value;
      out.pieces.insert(out.pieces.end(), child.pieces.begin(), child.pieces.end());
    }
    if (mergeable) return Node{true, *common, {{Cell::cylinder(prefix), *common}}};
    return out;
  }

  UnitSpace space_;
  std::vector<std::pair<Cell, T>> pieces_;
};

}  // namespace ample

#endif
