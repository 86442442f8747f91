#ifndef AMPLE_STARCONV_HPP
#define AMPLE_STARCONV_HPP

// Rational convolution *-algebra on the arrows of a presented groupoid. An
// arrow is (reduced word w, source point x); an element stores, per word, a
// locally constant coefficient function of the source supported in dom(w).

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/paradox.hpp"
#include "ample/states.hpp"

namespace ample {

using Coeffs = LocallyConstant<Rational>;

struct ConvTerm {
  Word word;
  Cell cell;  // source cell
  Rational coef;

  friend bool operator==(const ConvTerm&, const ConvTerm&) = default;
};

inline constexpr int default_depth_cap = 12;

namespace detail {

// f ∘ m on dom(m)
inline Coeffs pull_back(const PartialMap& m, const Coeffs& f) {
  const auto& space = f.space();
  std::vector<std::pair<Cell, Rational>> terms;
  if (space.is_finite()) {
    for (int p = 0; p < space.size(); ++p) {
      const int t = m.targets()[p];
      if (t < 0) continue;
      const Rational v = f.at(Cell::at(t));
      if (v != 0) terms.emplace_back(Cell::at(p), v);
    }
    return Coeffs::from_terms(space, terms);
  }
  for (const auto& [cell, v] : f.pieces()) {
    const auto pre = m.preimage(Clopen::single(space, cell));
    for (const auto& c : pre.cells()) terms.emplace_back(c, v);
  }
  return Coeffs::from_terms(space, terms);
}

}  // namespace detail

class ConvElement {
 public:
  explicit ConvElement(UnitSpace space) : space_(space) {}

  /// Sum of coef·1_{(word, cell)}; each cell must lie in the word's domain.
  static ConvElement from_terms(const Groupoid& g, const std::vector<ConvTerm>& terms) {
    std::map<Word, std::vector<std::pair<Cell, Rational>>> by_word;
    for (const auto& t : terms) {
      const Word w = g.reduce(t.word);
      if (!g.word_map(w).domain().contains(t.cell))
        throw std::invalid_argument("cell " + t.cell.to_string() + " is outside the domain of " + to_string(w));
      by_word[w].emplace_back(t.cell, t.coef);
    }
    ConvElement out(g.space());
    for (auto& [w, ts] : by_word) out.put(w, Coeffs::from_terms(g.space(), ts));
    return out;
  }

  /// 1_S for a bisection S.
  static ConvElement indicator(const Groupoid& g, const Bisection& s) {
    std::vector<ConvTerm> terms;
    for (const auto& p : s.pieces())
      for (const auto& c : p.domain.cells()) terms.push_back({p.word, c, Rational(1)});
    return from_terms(g, terms);
  }

  /// The unit-supported element with coefficient function h.
  static ConvElement on_units(const Coeffs& h) {
    ConvElement out(h.space());
    out.put(Word{}, h);
    return out;
  }

  const UnitSpace& space() const { return space_; }
  const std::map<Word, Coeffs>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Canonical terms: words in shortlex order, cells of the coarsest
  /// level-set decomposition.
  std::vector<ConvTerm> terms() const {
    std::vector<ConvTerm> out;
    for (const auto& [w, f] : coeffs_)
      for (const auto& [c, v] : f.pieces()) out.push_back({w, c, v});
    return out;
  }

  int depth() const {
    int d = 0;
    for (const auto& [w, f] : coeffs_) d = std::max(d, f.depth());
    return d;
  }

  /// Coefficient function of the word (zero when absent).
  Coeffs at(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? Coeffs(space_) : it->second;
  }

  ConvElement scaled(const Rational& s) const {
    ConvElement out(space_);
    if (s == 0) return out;
    for (const auto& [w, f] : coeffs_) out.put(w, f.scaled(s));
    return out;
  }

  friend ConvElement operator+(const ConvElement& a, const ConvElement& b) {
    require_same_space(a.space_, b.space_);
    ConvElement out = a;
    for (const auto& [w, f] : b.coeffs_) out.accumulate(w, f);
    return out;
  }

  friend ConvElement operator-(const ConvElement& a, const ConvElement& b) { return a + b.scaled(Rational(-1)); }

  friend bool operator==(const ConvElement& a, const ConvElement& b) {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_;
  }

  void accumulate(const Word& w, const Coeffs& f) {
    auto it = coeffs_.find(w);
    if (it == coeffs_.end()) {
      put(w, f);
      return;
    }
    it->second = it->second + f;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

 private:
  void put(const Word& w, Coeffs f) {
    if (!f.is_zero()) coeffs_.insert_or_assign(w, std::move(f));
  }

  UnitSpace space_;
  std::map<Word, Coeffs> coeffs_;
};

/// (a ∗ b)(w, x) = Σ_{w = w1 w2} a(w1, w2·x) b(w2, x).
inline ConvElement conv(const Groupoid& g, const ConvElement& a, const ConvElement& b, int depth_cap = default_depth_cap) {
  require_same_space(g.space(), a.space());
  require_same_space(g.space(), b.space());
  ConvElement out(g.space());
  for (const auto& [w2, f2] : b.coefficients()) {
    const auto m2 = g.word_map(w2);
    for (const auto& [w1, f1] : a.coefficients()) {
      const Coeffs h = detail::pull_back(m2, f1) * f2;
      if (h.is_zero()) continue;
      out.accumulate(g.multiply(w1, w2), h);
    }
  }
  if (g.space().is_shift() && out.depth() > depth_cap)
    throw std::length_error("product needs depth " + std::to_string(out.depth()) + ", above the cap " +
                            std::to_string(depth_cap));
  return out;
}

/// a*(w, x) = a(w⁻¹, w·x); coefficients are real, so no conjugation.
inline ConvElement star(const Groupoid& g, const ConvElement& a) {
  require_same_space(g.space(), a.space());
  ConvElement out(g.space());
  for (const auto& [w, f] : a.coefficients()) {
    const Word inv = g.invert(w);
    out.accumulate(inv, detail::pull_back(g.word_map(inv), f));
  }
  return out;
}

/// Restriction to unit arrows (trivial word).
inline Coeffs expectation(const ConvElement& a) { return a.at(Word{}); }

inline std::optional<Coeffs> unit_part(const ConvElement& a) {
  if (a.is_zero()) return Coeffs(a.space());
  if (a.coefficients().size() != 1 || !a.coefficients().begin()->first.empty()) return std::nullopt;
  return a.coefficients().begin()->second;
}

inline bool is_zero_one(const Coeffs& h) {
  for (const auto& [c, v] : h.pieces())
    if (v != 1) return false;
  return true;
}

/// p ≤ q for unit-supported projections: q − p is a {0,1}-valued unit function.
inline bool dominated(const ConvElement& p, const ConvElement& q) {
  const auto hp = unit_part(p), hq = unit_part(q);
  return hp && hq && is_zero_one(*hp) && is_zero_one(*hq) && is_zero_one(*hq - *hp);
}

inline ConvElement unit_indicator(const Clopen& a) { return ConvElement::on_units(Coeffs::indicator(a)); }

// ---------------------------------------------------------------------------
// Matrices over the convolution algebra

class MatConvElement {
 public:
  MatConvElement(UnitSpace space, int size) : space_(space), size_(size), entries_(size * size, ConvElement(space)) {
    if (size < 1) throw std::invalid_argument("matrix size must be positive");
  }

  /// e_{row,col} ⊗ a (0-based).
  static MatConvElement unit_matrix(int size, int row, int col, const ConvElement& a) {
    MatConvElement m(a.space(), size);
    m.at(row, col) = a;
    return m;
  }

  /// diag(a, …, a) on the first `count` diagonal slots.
  static MatConvElement diagonal(int size, int count, const ConvElement& a) {
    MatConvElement m(a.space(), size);
    for (int i = 0; i < count; ++i) m.at(i, i) = a;
    return m;
  }

  int size() const { return size_; }
  const UnitSpace& space() const { return space_; }
  ConvElement& at(int i, int j) { return entries_[i * size_ + j]; }
  const ConvElement& at(int i, int j) const { return entries_[i * size_ + j]; }

  friend MatConvElement operator+(const MatConvElement& a, const MatConvElement& b) {
    if (a.size_ != b.size_) throw std::invalid_argument("matrix sizes differ");
    MatConvElement out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] = a.entries_[i] + b.entries_[i];
    return out;
  }

  friend bool operator==(const MatConvElement&, const MatConvElement&) = default;

 private:
  UnitSpace space_;
  int size_;
  std::vector<ConvElement> entries_;
};

inline MatConvElement conv(const Groupoid& g, const MatConvElement& a, const MatConvElement& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix sizes differ");
  MatConvElement out(g.space(), a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int k = 0; k < a.size(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < a.size(); ++j)
        if (!b.at(k, j).is_zero()) out.at(i, j) = out.at(i, j) + conv(g, a.at(i, k), b.at(k, j));
    }
  return out;
}

inline MatConvElement star(const Groupoid& g, const MatConvElement& a) {
  MatConvElement out(g.space(), a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out.at(j, i) = star(g, a.at(i, j));
  return out;
}

/// Entrywise: zero off the diagonal, each diagonal entry of p dominated by
/// the matching entry of q.
inline bool dominated(const MatConvElement& p, const MatConvElement& q) {
  if (p.size() != q.size()) return false;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (i != j) {
        if (!p.at(i, j).is_zero() || !q.at(i, j).is_zero()) return false;
      } else if (!dominated(p.at(i, i), q.at(i, i))) {
        return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Isometries from paradoxical decompositions

struct IsometryReport {
  ConvElement f, g;
  bool f_isometry = false;      // f*f = 1_A
  bool g_isometry = false;      // g*g = 1_A
  bool ranges_dominated = false;  // ff* + gg* ≤ 1_A
  ConvElement range_sum;

  bool ok() const { return f_isometry && g_isometry && ranges_dominated; }
};

inline ConvElement row_indicator(const Groupoid& g, const std::vector<WitnessEntry>& row) {
  ConvElement out(g.space());
  for (const auto& e : row) out = out + ConvElement::indicator(g, e.v);
  return out;
}

/// f and g sum the indicators of the two rows of a (2,1) witness (after
/// making each row's domains disjoint).
inline IsometryReport isometries_from_witness(const Groupoid& grp, const ParadoxWitness& w) {
  detail::require(verify_witness(grp, w), "isometries_from_witness");
  if (w.k != 2 || w.l != 1) throw std::invalid_argument("isometries_from_witness needs a (2,1) witness");
  const auto d = disjointify(grp, w);
  IsometryReport rep{row_indicator(grp, d.rows[0]), row_indicator(grp, d.rows[1]), false, false, false,
                     ConvElement(grp.space())};
  const auto one_a = unit_indicator(w.a);
  rep.f_isometry = conv(grp, star(grp, rep.f), rep.f) == one_a;
  rep.g_isometry = conv(grp, star(grp, rep.g), rep.g) == one_a;
  rep.range_sum = conv(grp, rep.f, star(grp, rep.f)) + conv(grp, rep.g, star(grp, rep.g));
  rep.ranges_dominated = dominated(rep.range_sum, one_a);
  return rep;
}

struct MatrixIsometry {
  int row, entry, target;  // 1-based, as in the witness
  MatConvElement a;        // e_{target,row} ⊗ 1_V
};

struct MatrixReport {
  int k = 0, l = 0;
  std::vector<MatrixIsometry> pieces;
  MatConvElement source_sum, range_sum;  // Σ a*a and Σ aa*
  bool sources_orthogonal = false;
  bool ranges_orthogonal = false;
  bool source_sum_is_unit = false;  // Σ a*a = 1_k ⊗ 1_A
  bool range_sum_dominated = false;  // Σ aa* ≤ 1_l ⊗ 1_A

  bool ok() const { return sources_orthogonal && ranges_orthogonal && source_sum_is_unit && range_sum_dominated; }
};

/// The k×k matrices a_{i,j} = e_{m_ij, i} ⊗ 1_{V_ij} of a (k,l) witness.
inline MatrixReport matrix_isometries(const Groupoid& grp, const ParadoxWitness& w) {
  detail::require(verify_witness(grp, w), "matrix_isometries");
  const auto d = disjointify(grp, w);
  const int k = w.k;
  MatrixReport rep{w.k, w.l, {}, MatConvElement(grp.space(), k), MatConvElement(grp.space(), k)};
  std::vector<MatConvElement> src, ran;
  for (int i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d.rows[i].size(); ++j) {
      const auto& e = d.rows[i][j];
      auto a = MatConvElement::unit_matrix(k, e.m - 1, i, ConvElement::indicator(grp, e.v));
      auto as = star(grp, a);
      src.push_back(conv(grp, as, a));
      ran.push_back(conv(grp, a, as));
      rep.source_sum = rep.source_sum + src.back();
      rep.range_sum = rep.range_sum + ran.back();
      rep.pieces.push_back({i + 1, static_cast<int>(j) + 1, e.m, std::move(a)});
    }
  const MatConvElement zero(grp.space(), k);
  rep.sources_orthogonal = rep.ranges_orthogonal = true;
  for (std::size_t p = 0; p < src.size(); ++p)
    for (std::size_t q = p + 1; q < src.size(); ++q) {
      rep.sources_orthogonal = rep.sources_orthogonal && conv(grp, src[p], src[q]) == zero;
      rep.ranges_orthogonal = rep.ranges_orthogonal && conv(grp, ran[p], ran[q]) == zero;
    }
  const auto one_a = unit_indicator(w.a);
  rep.source_sum_is_unit = rep.source_sum == MatConvElement::diagonal(k, k, one_a);
  rep.range_sum_dominated = dominated(rep.range_sum, MatConvElement::diagonal(k, w.l, one_a));
  return rep;
}

// ---------------------------------------------------------------------------
// Regular representation at a point of a finite space

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  RationalMatrix out(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < inner; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

inline RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

class RegularRep {
 public:
  /// G_u by breadth-first search over reduced words up to `max_length`.
  RegularRep(const Groupoid& g, int u, int max_length = 8) : g_(&g), u_(u) {
    if (!g.space().is_finite()) throw std::invalid_argument("regular representation needs a finite unit space");
    if (u < 0 || u >= g.space().size()) throw std::invalid_argument("point out of range");
    arrows_.push_back(Word{});
    index_[Word{}] = 0;
    std::vector<Word> frontier{Word{}};
    for (int len = 0; !frontier.empty(); ++len) {
      std::vector<Word> next;
      for (const auto& w : frontier)
        for (int gi = 0; gi < g.generator_count(); ++gi)
          for (bool inv : {false, true}) {
            const Word nw = g.multiply(gen_word(gi, inv), w);
            if (index_.count(nw) || g.word_map(nw).targets()[u] < 0) continue;
            if (len >= max_length) {
              truncated_ = true;
              continue;
            }
            index_[nw] = arrows_.size();
            arrows_.push_back(nw);
            next.push_back(nw);
          }
      frontier = std::move(next);
    }
  }

  /// Basis of the module: arrows with source u, the unit first.
  const std::vector<Word>& arrows() const { return arrows_; }
  /// More arrows exist beyond the length cap (free words with isotropy).
  bool truncated() const { return truncated_; }
  int point() const { return u_; }

  /// π_u(f): column h holds f ∗ δ_h = Σ f(k) δ_{kh} over k with d(k) = r(h).
  RationalMatrix operator()(const ConvElement& f) const {
    const std::size_t n = arrows_.size();
    RationalMatrix out(n, std::vector<Rational>(n));
    for (std::size_t h = 0; h < n; ++h) {
      const int y = g_->word_map(arrows_[h]).targets()[u_];
      for (const auto& [w, coef] : f.coefficients()) {
        const Rational v = coef.at(Cell::at(y));
        if (v == 0) continue;
        const Word prod = g_->multiply(w, arrows_[h]);
        auto it = index_.find(prod);
        if (it == index_.end()) throw std::length_error("arrow " + to_string(prod) + " lies beyond the length cap");
        out[it->second][h] += v;
      }
    }
    return out;
  }

 private:
  const Groupoid* g_;
  int u_;
  std::vector<Word> arrows_;
  std::map<Word, std::size_t> index_;
  bool truncated_ = false;
};

// ---------------------------------------------------------------------------
// Traces from states

/// τ(a) = Σ_cells μ(cell) · E(a)(cell).
class TraceFunctional {
 public:
  explicit TraceFunctional(StateVector state) : state_(std::move(state)) {}

  const StateVector& state() const { return state_; }

  Rational operator()(const ConvElement& a) const {
    require_same_space(state_.space, a.space());
    const Coeffs e = expectation(a);
    Rational total;
    for (std::size_t i = 0; i < state_.cells.size(); ++i) {
      if (state_.values[i] == 0) continue;
      try {
        total += state_.values[i] * e.at(state_.cells[i]);
      } catch (const std::domain_error&) {
        throw std::domain_error("element is not expressible at depth " + std::to_string(state_.depth));
      }
    }
    return total;
  }

 private:
  StateVector state_;
};

inline TraceFunctional trace_from_state(const ConstraintSystem& cs, const StateVector& s) {
  if (!verify_state(cs, s)) throw std::invalid_argument("state does not satisfy its constraint system");
  return TraceFunctional(s);
}

}  // namespace ample

#endif
