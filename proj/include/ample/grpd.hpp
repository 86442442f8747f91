#ifndef AMPLE_GRPD_HPP
#define AMPLE_GRPD_HPP

// Ample groupoids presented by generating compact open bisections.
//
// Every arrow is named by a word in the generators together with its source
// point. Under the free-words isotropy model the word is freely reduced;
// under a multiplication-table model it is replaced by the shortlex-least
// word reaching the same group element. A Bisection is a finite set of
// arrow pieces (word, domain clopen); its partial homeomorphism is the union
// of the word maps restricted to the piece domains.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ample/stone.hpp"

namespace ample {

/// One letter of a word: a generator or its inverse. Positive letters order
/// before inverse letters, then by generator index.
struct Letter {
  bool inverse = false;
  int gen = 0;

  Letter inverted() const { return Letter{!inverse, gen}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Letters are listed left to right; as a map the rightmost letter acts first.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  /// Shortlex order: shorter words first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(), b.letters.begin(),
                                                  b.letters.end());
  }
  friend bool operator==(const Word&, const Word&) = default;
};

inline Word gen_word(int g, bool inverse = false) { return Word({Letter{inverse, g}}); }

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += "g" + std::to_string(w.letters[i].gen + 1);
    if (w.letters[i].inverse) s += "^-1";
  }
  return s;
}

/// A partial homeomorphism of the unit space that is a finite union of
/// prefix replacements sγ ↦ dγ (shift) or a partial injection (finite).
class PartialMap {
 public:
  struct Piece {
    std::string src, dst;
    friend auto operator<=>(const Piece&, const Piece&) = default;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  explicit PartialMap(UnitSpace space) : space_(space) {
    if (space.is_finite()) target_.assign(space.size(), -1);
  }

  static PartialMap identity(const UnitSpace& space) {
    PartialMap m(space);
    if (space.is_finite()) std::iota(m.target_.begin(), m.target_.end(), 0);
    else m.pieces_.push_back({"", ""});
    return m;
  }

  static PartialMap from_pairs(const UnitSpace& space, const std::vector<std::pair<int, int>>& pairs) {
    if (!space.is_finite()) throw std::invalid_argument("partial injection on a non-finite space");
    PartialMap m(space);
    std::vector<bool> hit(space.size(), false);
    for (auto [s, t] : pairs) {
      if (s < 0 || t < 0 || s >= space.size() || t >= space.size())
        throw std::invalid_argument("point out of range in partial injection");
      if (m.target_[s] >= 0) throw std::invalid_argument("repeated source " + std::to_string(s));
      if (hit[t]) throw std::invalid_argument("repeated target " + std::to_string(t));
      m.target_[s] = t;
      hit[t] = true;
    }
    return m;
  }

  static PartialMap from_prefixes(const UnitSpace& space, std::vector<Piece> pieces) {
    if (!space.is_shift()) throw std::invalid_argument("prefix map on a non-shift space");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (!space.valid_word(pieces[i].src) || !space.valid_word(pieces[i].dst))
        throw std::invalid_argument("prefix word outside the alphabet");
      for (std::size_t j = 0; j < i; ++j) {
        if (is_prefix(pieces[i].src, pieces[j].src) || is_prefix(pieces[j].src, pieces[i].src))
          throw std::invalid_argument("overlapping domains");
        if (is_prefix(pieces[i].dst, pieces[j].dst) || is_prefix(pieces[j].dst, pieces[i].dst))
          throw std::invalid_argument("overlapping ranges");
      }
    }
    PartialMap m(space);
    m.pieces_ = std::move(pieces);
    std::sort(m.pieces_.begin(), m.pieces_.end());
    return m;
  }

  const UnitSpace& space() const { return space_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<int>& targets() const { return target_; }

  bool empty() const {
    if (space_.is_shift()) return pieces_.empty();
    return std::all_of(target_.begin(), target_.end(), [](int t) { return t < 0; });
  }

  Clopen domain() const {
    std::vector<Cell> cells;
    if (space_.is_finite()) {
      for (int p = 0; p < space_.size(); ++p)
        if (target_[p] >= 0) cells.push_back(Cell::at(p));
    } else {
      for (const auto& pc : pieces_) cells.push_back(Cell::cylinder(pc.src));
    }
    return Clopen::of(space_, std::move(cells));
  }

  Clopen range() const { return inverse().domain(); }

  PartialMap inverse() const {
    PartialMap m(space_);
    if (space_.is_finite()) {
      for (int p = 0; p < space_.size(); ++p)
        if (target_[p] >= 0) m.target_[target_[p]] = p;
    } else {
      for (const auto& pc : pieces_) m.pieces_.push_back({pc.dst, pc.src});
      std::sort(m.pieces_.begin(), m.pieces_.end());
    }
    return m;
  }

  /// this ∘ first.
  PartialMap after(const PartialMap& first) const {
    require_same_space(space_, first.space_);
    PartialMap m(space_);
    if (space_.is_finite()) {
      for (int p = 0; p < space_.size(); ++p)
        if (first.target_[p] >= 0) m.target_[p] = target_[first.target_[p]];
      return m;
    }
    for (const auto& f : first.pieces_)
      for (const auto& g : pieces_) {
        if (is_prefix(g.src, f.dst)) m.pieces_.push_back({f.src, g.dst + f.dst.substr(g.src.size())});
        else if (is_prefix(f.dst, g.src)) m.pieces_.push_back({f.src + g.src.substr(f.dst.size()), g.dst});
      }
    std::sort(m.pieces_.begin(), m.pieces_.end());
    return m;
  }

  PartialMap restricted(const Clopen& d) const {
    require_same_space(space_, d.space());
    PartialMap m(space_);
    if (space_.is_finite()) {
      for (int p = 0; p < space_.size(); ++p)
        if (target_[p] >= 0 && d.contains(Cell::at(p))) m.target_[p] = target_[p];
      return m;
    }
    for (const auto& pc : pieces_)
      for (const auto& c : d.cells()) {
        if (is_prefix(c.word, pc.src)) m.pieces_.push_back(pc);
        else if (is_prefix(pc.src, c.word)) m.pieces_.push_back({c.word, pc.dst + c.word.substr(pc.src.size())});
      }
    std::sort(m.pieces_.begin(), m.pieces_.end());
    return m;
  }

  /// Image of a ∩ domain().
  Clopen image(const Clopen& a) const { return restricted(a).range(); }
  /// {x ∈ domain() : f(x) ∈ b}.
  Clopen preimage(const Clopen& b) const { return inverse().image(b); }

  /// Image of a cell lying inside a single piece, if it does.
  std::optional<Cell> image_of(const Cell& c) const {
    if (space_.is_finite()) {
      if (c.point >= 0 && target_[c.point] >= 0) return Cell::at(target_[c.point]);
      return std::nullopt;
    }
    for (const auto& pc : pieces_)
      if (is_prefix(pc.src, c.word)) return Cell::cylinder(pc.dst + c.word.substr(pc.src.size()));
    return std::nullopt;
  }

  /// Graph inclusion: other ⊆ this.
  bool extends(const PartialMap& other) const {
    require_same_space(space_, other.space_);
    if (space_.is_finite()) {
      for (int p = 0; p < space_.size(); ++p)
        if (other.target_[p] >= 0 && target_[p] != other.target_[p]) return false;
      return true;
    }
    for (const auto& pc : other.pieces_) {
      const auto cyl = Clopen::single(space_, Cell::cylinder(pc.src));
      auto r = restricted(cyl);
      if (!(r.domain() == cyl)) return false;
      for (const auto& q : r.pieces_)
        if (!is_prefix(pc.src, q.src) || q.dst != pc.dst + q.src.substr(pc.src.size())) return false;
    }
    return true;
  }

  /// True when the map fixes every point of its domain.
  bool is_identity() const { return PartialMap::identity(space_).extends(*this); }

 private:
  UnitSpace space_;
  std::vector<Piece> pieces_;
  std::vector<int> target_;
};

// ---------------------------------------------------------------------------
// Presentations

/// The bisection U_{beta,alpha}: alpha·γ ↦ beta·γ.
struct PrefixMap {
  std::string alpha, beta;
};

struct PartialInjection {
  std::vector<std::pair<int, int>> pairs;
};

/// A group element acting by finitely many prefix pieces with pairwise
/// disjoint domains and pairwise disjoint ranges.
struct PrefixPieces {
  std::vector<PrefixMap> pieces;
};

struct Generator {
  std::string label;
  std::variant<PrefixMap, PartialInjection, PrefixPieces> action;
  /// Group element index; required under a multiplication table.
  std::optional<int> element;
};

using MultiplicationTable = std::vector<std::vector<int>>;

struct Presentation {
  UnitSpace space;
  std::vector<Generator> generators;
  /// Absent: free-words isotropy model.
  std::optional<MultiplicationTable> table;
  std::string name;
};

inline PartialMap generator_map(const UnitSpace& space, const Generator& g) {
  return std::visit(
      [&](const auto& a) -> PartialMap {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, PrefixMap>) {
          return PartialMap::from_prefixes(space, {{a.alpha, a.beta}});
        } else if constexpr (std::is_same_v<A, PartialInjection>) {
          return PartialMap::from_pairs(space, a.pairs);
        } else {
          std::vector<PartialMap::Piece> ps;
          for (const auto& p : a.pieces) ps.push_back({p.alpha, p.beta});
          return PartialMap::from_prefixes(space, std::move(ps));
        }
      },
      g.action);
}

// ---------------------------------------------------------------------------
// Bisections

struct ArrowPiece {
  Word word;
  Clopen domain;

  friend bool operator==(const ArrowPiece&, const ArrowPiece&) = default;
};

/// Canonical: at most one piece per word, nonempty domains, sorted by word.
class Bisection {
 public:
  explicit Bisection(UnitSpace space) : space_(space) {}
  Bisection(UnitSpace space, std::vector<ArrowPiece> pieces) : space_(space) {
    std::map<Word, Clopen> merged;
    for (auto& p : pieces) {
      require_same_space(space, p.domain.space());
      if (p.domain.empty()) continue;
      auto it = merged.find(p.word);
      if (it == merged.end()) merged.emplace(std::move(p.word), std::move(p.domain));
      else it->second = unite(it->second, p.domain);
    }
    for (auto& [w, d] : merged) pieces_.push_back({w, d});
  }

  const UnitSpace& space() const { return space_; }
  const std::vector<ArrowPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  friend bool operator==(const Bisection& a, const Bisection& b) {
    return a.space_ == b.space_ && a.pieces_ == b.pieces_;
  }

 private:
  UnitSpace space_;
  std::vector<ArrowPiece> pieces_;
};

struct Enumeration {
  std::vector<Bisection> bisections;
  bool truncated = false;
};

enum class Minimality { yes, unknown };

class Groupoid {
 public:
  explicit Groupoid(Presentation pres) : pres_(std::move(pres)) {
    const auto& space = pres_.space;
    for (std::size_t i = 0; i < pres_.generators.size(); ++i) {
      try {
        letter_maps_.push_back(generator_map(space, pres_.generators[i]));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("generator g" + std::to_string(i + 1) + ": " + e.what());
      }
      inverse_maps_.push_back(letter_maps_.back().inverse());
    }
    if (pres_.table) init_table();
  }

  const Presentation& presentation() const { return pres_; }
  const UnitSpace& space() const { return pres_.space; }
  int generator_count() const { return static_cast<int>(pres_.generators.size()); }
  bool free_words() const { return !pres_.table.has_value(); }

  const PartialMap& letter_map(const Letter& l) const {
    check_letter(l);
    if (!free_words()) return element_maps_[letter_element(l)];
    return l.inverse ? inverse_maps_[l.gen] : letter_maps_[l.gen];
  }

  /// Free reduction, or the canonical word of the group element.
  Word reduce(const Word& w) const {
    for (const auto& l : w.letters) check_letter(l);
    if (!free_words()) return canonical_words_[element_of(w)];
    Word out;
    for (const auto& l : w.letters) {
      if (!out.empty() && out.letters.back() == l.inverted()) out.letters.pop_back();
      else out.letters.push_back(l);
    }
    return out;
  }

  bool is_reduced(const Word& w) const { return reduce(w) == w; }

  Word multiply(const Word& a, const Word& b) const { return reduce(concat(a, b)); }

  Word invert(const Word& w) const {
    Word out;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(it->inverted());
    return reduce(out);
  }

  /// The partial homeomorphism of a word (maximal domain).
  PartialMap word_map(const Word& w) const {
    if (!free_words()) return element_maps_[element_of(w)];
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->maps.find(w); it != cache_->maps.end()) return it->second;
    }
    PartialMap acc = PartialMap::identity(space());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) acc = letter_map(*it).after(acc);
    std::lock_guard lock(cache_->mutex);
    cache_->maps.emplace(w, acc);
    return acc;
  }

  // -- bisection calculus ---------------------------------------------------

  Bisection identity(const Clopen& d) const { return Bisection(space(), {{Word{}, d}}); }

  /// The word's bisection on its maximal domain (possibly empty).
  Bisection from_word(const Word& w) const {
    Word r = reduce(w);
    return Bisection(space(), {{r, word_map(r).domain()}});
  }

  Bisection generator(int i, bool inverse = false) const { return from_word(gen_word(i, inverse)); }

  Clopen dom(const Bisection& s) const {
    require_same_space(space(), s.space());
    Clopen out(space());
    for (const auto& p : s.pieces()) out = unite(out, p.domain);
    return out;
  }

  Clopen ran(const Bisection& s) const {
    require_same_space(space(), s.space());
    Clopen out(space());
    for (const auto& p : s.pieces()) out = unite(out, word_map(p.word).image(p.domain));
    return out;
  }

  Bisection inverse(const Bisection& s) const {
    require_same_space(space(), s.space());
    std::vector<ArrowPiece> out;
    for (const auto& p : s.pieces()) out.push_back({invert(p.word), word_map(p.word).image(p.domain)});
    return Bisection(space(), std::move(out));
  }

  /// {st : d(s) = r(t)}.
  Bisection compose(const Bisection& s, const Bisection& t) const {
    require_same_space(space(), s.space());
    require_same_space(space(), t.space());
    std::vector<ArrowPiece> out;
    for (const auto& pt : t.pieces()) {
      const auto mt = word_map(pt.word).restricted(pt.domain);
      for (const auto& ps : s.pieces()) {
        Clopen d = mt.preimage(ps.domain);
        if (!d.empty()) out.push_back({multiply(ps.word, pt.word), std::move(d)});
      }
    }
    return Bisection(space(), std::move(out));
  }

  Bisection restrict(const Bisection& s, const Clopen& d) const {
    require_same_space(space(), s.space());
    require_same_space(space(), d.space());
    std::vector<ArrowPiece> out;
    for (const auto& p : s.pieces()) out.push_back({p.word, intersect(p.domain, d)});
    return Bisection(space(), std::move(out));
  }

  /// Union of two bisections as arrow sets (the result may violate the
  /// bisection invariants; see check()).
  Bisection join(const Bisection& s, const Bisection& t) const {
    auto pieces = s.pieces();
    pieces.insert(pieces.end(), t.pieces().begin(), t.pieces().end());
    return Bisection(space(), std::move(pieces));
  }

  /// α_S(A) for A ⊆ d(S).
  Clopen apply(const Bisection& s, const Clopen& a) const {
    require_same_space(space(), a.space());
    if (!is_subset(a, dom(s))) throw std::invalid_argument("clopen not contained in the bisection domain");
    Clopen out(space());
    for (const auto& p : s.pieces()) out = unite(out, word_map(p.word).image(intersect(a, p.domain)));
    return out;
  }

  /// First violated bisection invariant, if any.
  std::optional<std::string> check(const Bisection& s) const {
    if (!(s.space() == space())) return "bisection over " + s.space().describe();
    std::vector<Clopen> ranges;
    for (std::size_t i = 0; i < s.pieces().size(); ++i) {
      const auto& p = s.pieces()[i];
      for (const auto& l : p.word.letters)
        if (l.gen < 0 || l.gen >= generator_count()) return "unknown generator in word " + to_string(p.word);
      if (!is_reduced(p.word)) return "word " + to_string(p.word) + " is not in reduced form";
      const auto m = word_map(p.word);
      if (!is_subset(p.domain, m.domain())) return "piece " + to_string(p.word) + " domain exceeds the word's domain";
      ranges.push_back(m.image(p.domain));
      for (std::size_t j = 0; j < i; ++j) {
        if (!disjoint(p.domain, s.pieces()[j].domain)) return "piece domains overlap";
        if (!disjoint(ranges[i], ranges[j])) return "piece ranges overlap";
      }
    }
    return std::nullopt;
  }

  /// All single-piece bisections with |word| <= depth on maximal domains,
  /// nonempty, in shortlex word order.
  Enumeration enumerate(int depth, std::size_t max_pieces = std::numeric_limits<std::size_t>::max()) const {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    Enumeration out;
    auto push = [&](const Word& w, const PartialMap& m) {
      if (out.bisections.size() >= max_pieces) {
        out.truncated = true;
        return false;
      }
      out.bisections.emplace_back(space(), std::vector<ArrowPiece>{{w, m.domain()}});
      return true;
    };
    if (!free_words()) {
      for (std::size_t e = 0; e < canonical_words_.size(); ++e) {
        const auto& w = canonical_words_[order_[e]];
        if (static_cast<int>(w.size()) > depth) break;
        const auto& m = element_maps_[order_[e]];
        if (!m.empty() && !push(w, m)) break;
      }
      return out;
    }
    std::vector<std::pair<Word, PartialMap>> level{{Word{}, PartialMap::identity(space())}};
    if (!push(level.front().first, level.front().second)) return out;
    for (int len = 1; len <= depth; ++len) {
      std::vector<std::pair<Word, PartialMap>> next;
      for (const auto& [w, m] : level) {
        for (const auto& l : letters()) {
          if (!w.empty() && w.letters.back() == l.inverted()) continue;
          PartialMap nm = m.after(letter_map(l));
          if (nm.empty()) continue;
          Word nw = w;
          nw.letters.push_back(l);
          if (!push(nw, nm)) return out;
          next.emplace_back(std::move(nw), std::move(nm));
        }
      }
      level = std::move(next);
    }
    return out;
  }

  /// Letters in canonical order: g1..gn then g1^-1..gn^-1.
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (int inv = 0; inv < 2; ++inv)
      for (int g = 0; g < generator_count(); ++g) out.push_back(Letter{inv == 1, g});
    return out;
  }

  /// ⋃ α_w(A ∩ dom w) over enumerated words with |w| <= depth.
  Clopen saturate(const Clopen& a, int depth) const {
    require_same_space(space(), a.space());
    Clopen out(space());
    for (const auto& b : enumerate(depth).bisections) {
      const auto& p = b.pieces().front();
      out = unite(out, word_map(p.word).image(intersect(a, p.domain)));
    }
    return out;
  }

  /// yes when every depth-`depth` cell saturates to the whole space within
  /// words of length <= depth; never a definitive no.
  Minimality is_minimal(int depth) const {
    std::vector<Cell> cells;
    if (space().is_finite()) {
      for (int p = 0; p < space().size(); ++p) cells.push_back(Cell::at(p));
    } else {
      for (auto& w : all_words(space(), depth)) cells.push_back(Cell::cylinder(std::move(w)));
    }
    for (const auto& c : cells)
      if (!saturate(Clopen::single(space(), c), depth).is_whole()) return Minimality::unknown;
    return Minimality::yes;
  }

  /// Group element of a word under the multiplication-table model.
  int element_of(const Word& w) const {
    if (free_words()) throw std::logic_error("element_of needs a multiplication table");
    int e = identity_element_;
    for (const auto& l : w.letters) e = (*pres_.table)[e][letter_element(l)];
    return e;
  }

  int element_count() const { return static_cast<int>(canonical_words_.size()); }

 private:
  void check_letter(const Letter& l) const {
    if (l.gen < 0 || l.gen >= generator_count())
      throw std::invalid_argument("generator index " + std::to_string(l.gen + 1) + " out of range");
  }

  int letter_element(const Letter& l) const {
    const int e = *pres_.generators[l.gen].element;
    return l.inverse ? inverse_element_[e] : e;
  }

  void init_table() {
    const auto& t = *pres_.table;
    const int n = static_cast<int>(t.size());
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("multiplication table is not square");
      for (int x : row)
        if (x < 0 || x >= n) throw std::invalid_argument("multiplication table entry out of range");
    }
    identity_element_ = -1;
    for (int e = 0; e < n && identity_element_ < 0; ++e) {
      bool ok = true;
      for (int x = 0; x < n; ++x) ok = ok && t[e][x] == x && t[x][e] == x;
      if (ok) identity_element_ = e;
    }
    if (identity_element_ < 0) throw std::invalid_argument("multiplication table has no identity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t[t[a][b]][c] != t[a][t[b][c]]) throw std::invalid_argument("multiplication table is not associative");
    inverse_element_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (t[a][b] == identity_element_) inverse_element_[a] = b;
    if (std::count(inverse_element_.begin(), inverse_element_.end(), -1))
      throw std::invalid_argument("multiplication table is not a group");
    for (std::size_t i = 0; i < pres_.generators.size(); ++i) {
      const auto& el = pres_.generators[i].element;
      if (!el || *el < 0 || *el >= n)
        throw std::invalid_argument("generator g" + std::to_string(i + 1) + ": missing or invalid group element");
    }

    // Shortlex-least word for every reachable element (breadth first).
    std::vector<std::optional<Word>> words(n);
    words[identity_element_] = Word{};
    order_.push_back(identity_element_);
    std::vector<int> frontier{identity_element_};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int e : frontier)
        for (const auto& l : letters()) {
          const int f = t[e][letter_element(l)];
          if (words[f]) continue;
          Word w = *words[e];
          w.letters.push_back(l);
          words[f] = std::move(w);
          order_.push_back(f);
          next.push_back(f);
        }
      frontier = std::move(next);
    }
    canonical_words_.assign(n, Word{});
    for (int e = 0; e < n; ++e)
      if (words[e]) canonical_words_[e] = *words[e];
    // unreachable elements act trivially and never occur in reduced words
    element_maps_.assign(n, PartialMap(space()));
    for (int e : order_) {
      PartialMap acc = PartialMap::identity(space());
      const auto& w = canonical_words_[e];
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        acc = (it->inverse ? inverse_maps_[it->gen] : letter_maps_[it->gen]).after(acc);
      element_maps_[e] = acc;
    }
    for (int e : order_)
      for (const auto& l : letters()) {
        const auto& lm = l.inverse ? inverse_maps_[l.gen] : letter_maps_[l.gen];
        if (!element_maps_[t[letter_element(l)][e]].extends(lm.after(element_maps_[e])))
          throw std::invalid_argument("generator actions are inconsistent with the multiplication table");
      }
  }

  Presentation pres_;
  std::vector<PartialMap> letter_maps_, inverse_maps_;
  int identity_element_ = 0;
  std::vector<int> inverse_element_;
  std::vector<Word> canonical_words_;
  std::vector<int> order_;  // reachable elements in shortlex order of canonical words
  std::vector<PartialMap> element_maps_;
  // Word maps depend only on the presentation, so copies may share it.
  struct Cache {
    std::mutex mutex;
    std::map<Word, PartialMap> maps;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// ---------------------------------------------------------------------------
// Builtin presentations

/// Cuntz groupoid G_n: shift(n) with generators U_{i,ε}: γ ↦ iγ.
inline Presentation cuntz(int n) {
  if (n < 2) throw std::invalid_argument("cuntz(n) needs n >= 2");
  Presentation p{UnitSpace::shift(n), {}, std::nullopt, "cuntz:" + std::to_string(n)};
  for (int i = 0; i < n; ++i) p.generators.push_back({"U" + std::to_string(i + 1), PrefixMap{"", std::string(1, char('1' + i))}, {}});
  return p;
}

inline Presentation trivial_groupoid(int n) {
  return Presentation{UnitSpace::finite(n), {}, std::nullopt, "trivial:" + std::to_string(n)};
}

/// The principal groupoid (equivalence relation) generated by the arrows.
/// Only a spanning forest of the arrow graph becomes generators, so reduced
/// words never carry isotropy.
inline Presentation finite_groupoid(int n, const std::vector<std::pair<int, int>>& arrows) {
  Presentation p = trivial_groupoid(n);
  p.name = "finite:" + std::to_string(n);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [s, t] : arrows) {
    if (s < 0 || t < 0 || s >= n || t >= n) throw std::invalid_argument("arrow endpoint out of range");
    const int a = find(s), b = find(t);
    if (a == b) continue;
    parent[a] = b;
    p.generators.push_back({"", PartialInjection{{{s, t}}}, {}});
  }
  return p;
}

/// Full equivalence relation on n points, generated by i ↦ i+1.
inline Presentation pair_groupoid(int n) {
  std::vector<std::pair<int, int>> arrows;
  for (int i = 0; i + 1 < n; ++i) arrows.emplace_back(i, i + 1);
  auto p = finite_groupoid(n, arrows);
  p.name = "pair:" + std::to_string(n);
  return p;
}

/// Transformation groupoid Γ ⋉ X for the group generated by the given
/// elements (free-words model unless a table is supplied).
inline Presentation transformation(const UnitSpace& space, std::vector<Generator> gens,
                                   std::optional<MultiplicationTable> table = std::nullopt) {
  return Presentation{space, std::move(gens), std::move(table), "transformation"};
}

/// Z/n acting on finite(n) by x ↦ x+1. With `table_model` the isotropy is
/// the cyclic group itself; otherwise arrows are free words in ρ.
inline Presentation rotation(int n, bool table_model = true) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  Generator rho{"rho", PartialInjection{pairs}, std::nullopt};
  std::optional<MultiplicationTable> table;
  if (table_model) {
    table.emplace(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) (*table)[a][b] = (a + b) % n;
    rho.element = 1 % n;
  }
  auto p = transformation(UnitSpace::finite(n), {rho}, table);
  p.name = (table_model ? "rotation:" : "rotation-free:") + std::to_string(n);
  return p;
}

/// Truncated binary odometer on shift(2) (digit 0 ↔ letter '1', digit 1 ↔
/// letter '2'): one group element with pieces 1^j 0 w ↦ 0^j 1 w, j < pieces.
inline Presentation odometer(int pieces = 3) {
  if (pieces < 1) throw std::invalid_argument("odometer needs at least one piece");
  PrefixPieces action;
  for (int j = 0; j < pieces; ++j)
    action.pieces.push_back({std::string(j, '2') + "1", std::string(j, '1') + "2"});
  auto p = transformation(UnitSpace::shift(2), {{"a", action, std::nullopt}});
  p.name = "odometer:" + std::to_string(pieces);
  return p;
}

/// Builtin alias such as "cuntz:2", "pair:3", "rotation:3", "odometer:3",
/// "trivial:2", "rotation-free:3". Returns nullopt for unknown names.
inline std::optional<Presentation> builtin(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  int arg = -1;
  if (colon != std::string_view::npos) {
    const std::string num(spec.substr(colon + 1));
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        num.size() > 3)
      return std::nullopt;
    arg = std::stoi(num);
  }
  if (name == "cuntz" && arg >= 0) return cuntz(arg);
  if (name == "pair" && arg >= 1) return pair_groupoid(arg);
  if (name == "rotation" && arg >= 1) return rotation(arg, true);
  if (name == "rotation-free" && arg >= 1) return rotation(arg, false);
  if (name == "trivial" && arg >= 1) return trivial_groupoid(arg);
  if (name == "odometer") return odometer(arg < 0 ? 3 : arg);
  return std::nullopt;
}

}  // namespace ample

#endif
