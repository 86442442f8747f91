#ifndef AMPLE_ORBITLAT_HPP
#define AMPLE_ORBITLAT_HPP

// Orbits, invariant subsets and the ideal lattice of the groupoid algebra,
// for groupoids on a finite unit space.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/starconv.hpp"

namespace ample {

using PointSet = std::uint32_t;  // bit p set ⇔ point p in the subset

inline constexpr int max_lattice_points = 16;

inline std::string set_to_string(PointSet s, int n) {
  std::string out = "{";
  bool first = true;
  for (int p = 0; p < n; ++p)
    if (s >> p & 1) {
      out += (first ? "" : ",") + std::to_string(p);
      first = false;
    }
  return out + "}";
}

struct OrbitPartition {
  int points = 0;
  std::vector<std::vector<int>> blocks;  // sorted by least point
  std::vector<int> block_of;             // point ↦ orbit index; also the quotient onto quasi-orbits

  PointSet mask(int block) const {
    PointSet s = 0;
    for (int p : blocks[block]) s |= PointSet(1) << p;
    return s;
  }
};

namespace detail {

inline void require_finite(const Groupoid& g, const char* what) {
  if (!g.space().is_finite()) throw std::invalid_argument(std::string(what) + " needs a finite unit space");
  if (g.space().size() > max_lattice_points)
    throw std::invalid_argument(std::string(what) + " supports at most " + std::to_string(max_lattice_points) +
                                " points");
}

}  // namespace detail

/// Connected components of the generator arrows. In a finite discrete space
/// orbit closures are orbits, so these are the quasi-orbits as well.
inline OrbitPartition orbits(const Groupoid& g) {
  detail::require_finite(g, "orbits");
  const int n = g.space().size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int gi = 0; gi < g.generator_count(); ++gi) {
    const auto& t = g.letter_map(Letter{false, gi}).targets();
    for (int p = 0; p < n; ++p)
      if (t[p] >= 0) parent[find(p)] = find(t[p]);
  }
  OrbitPartition out{n, {}, std::vector<int>(n, -1)};
  for (int p = 0; p < n; ++p) {
    const int root = find(p);
    if (out.block_of[root] < 0) {
      out.block_of[root] = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    out.block_of[p] = out.block_of[root];
    out.blocks[out.block_of[p]].push_back(p);
  }
  return out;
}

/// d(g) ∈ D ⇒ r(g) ∈ D for every generator arrow and its inverse.
inline bool is_invariant(const Groupoid& g, PointSet d) {
  detail::require_finite(g, "is_invariant");
  for (int gi = 0; gi < g.generator_count(); ++gi) {
    const auto& t = g.letter_map(Letter{false, gi}).targets();
    for (int p = 0; p < g.space().size(); ++p)
      if (t[p] >= 0 && ((d >> p & 1) != (d >> t[p] & 1))) return false;
  }
  return true;
}

struct InvariantLattice {
  int points = 0;
  std::vector<PointSet> members;  // ascending
  std::vector<std::vector<int>> join, meet;  // indices into members

  int index_of(PointSet s) const {
    auto it = std::lower_bound(members.begin(), members.end(), s);
    return it != members.end() && *it == s ? static_cast<int>(it - members.begin()) : -1;
  }
};

/// All unions of orbits.
inline InvariantLattice invariant_lattice(const Groupoid& g) {
  const auto orb = orbits(g);
  const int k = static_cast<int>(orb.blocks.size());
  InvariantLattice lat{orb.points, {}, {}, {}};
  for (std::uint32_t choice = 0; choice < (1u << k); ++choice) {
    PointSet s = 0;
    for (int b = 0; b < k; ++b)
      if (choice >> b & 1) s |= orb.mask(b);
    lat.members.push_back(s);
  }
  std::sort(lat.members.begin(), lat.members.end());
  const std::size_t m = lat.members.size();
  lat.join.assign(m, std::vector<int>(m));
  lat.meet.assign(m, std::vector<int>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      lat.join[i][j] = lat.index_of(lat.members[i] | lat.members[j]);
      lat.meet[i][j] = lat.index_of(lat.members[i] & lat.members[j]);
    }
  return lat;
}

// ---------------------------------------------------------------------------
// The finite-dimensional groupoid algebra

struct Arrow {
  Word word;
  int source, range;
};

/// Exact subspace of ℚⁿ kept in reduced row echelon form.
class Subspace {
 public:
  explicit Subspace(std::size_t n) : n_(n) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }

  /// Adds v; returns whether the dimension grew.
  bool add(std::vector<Rational> v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < n_ && v[lead] == 0) ++lead;
    if (lead == n_) return false;
    const Rational s = v[lead];
    for (auto& x : v) x /= s;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][lead];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) rows_[r][j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
    const auto at = pos - pivots_.begin();
    pivots_.insert(pos, lead);
    rows_.insert(rows_.begin() + at, std::move(v));
    return true;
  }

  bool contains(std::vector<Rational> v) const {
    reduce(v);
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    for (const auto& r : other.rows_)
      if (!contains(r)) return false;
    return true;
  }

  const std::vector<std::vector<Rational>>& basis() const { return rows_; }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  void reduce(std::vector<Rational>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector length does not match the subspace");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] -= f * rows_[r][j];
    }
  }

  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Basis: arrows; product of basis arrows is an arrow or zero.
class FiniteAlgebra {
 public:
  using Vec = std::vector<Rational>;

  /// Arrows from every point by word search up to `max_length`; throws if
  /// the arrow set is not exhausted there.
  explicit FiniteAlgebra(const Groupoid& g, int max_length = 8) {
    detail::require_finite(g, "FiniteAlgebra");
    for (int u = 0; u < g.space().size(); ++u) {
      const RegularRep rep(g, u, max_length);
      if (rep.truncated()) throw std::length_error("arrow set from point " + std::to_string(u) + " is not finite up to the cap");
      for (const auto& w : rep.arrows()) {
        index_[{w, u}] = arrows_.size();
        arrows_.push_back({w, u, g.word_map(w).targets()[u]});
      }
    }
    const std::size_t n = arrows_.size();
    product_.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (arrows_[i].source != arrows_[j].range) continue;
        product_[i][j] = index({g.multiply(arrows_[i].word, arrows_[j].word), arrows_[j].source});
      }
    for (const auto& a : arrows_) star_.push_back(index({g.invert(a.word), a.range}));
  }

  std::size_t dim() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  /// Index of a·b (b first), or -1 when not composable.
  int product(std::size_t a, std::size_t b) const { return product_[a][b]; }
  int star(std::size_t a) const { return star_[a]; }

  Vec basis_vector(std::size_t i) const {
    Vec v(dim());
    v[i] = 1;
    return v;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (y[j] != 0 && product_[i][j] >= 0) out[product_[i][j]] += x[i] * y[j];
    }
    return out;
  }

  /// Associativity of the structure constants over all basis triples.
  bool associative() const {
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = 0; b < dim(); ++b)
        for (std::size_t c = 0; c < dim(); ++c) {
          const int ab = product_[a][b], bc = product_[b][c];
          const int left = ab < 0 ? -1 : product_[ab][c];
          const int right = bc < 0 ? -1 : product_[a][bc];
          if (left != right) return false;
        }
    return true;
  }

  /// No arrow other than the unit starts and ends at the same point.
  bool principal() const {
    for (const auto& a : arrows_)
      if (a.source == a.range && !a.word.empty()) return false;
    return true;
  }

  /// Span of the arrows whose source lies in the set.
  Subspace arrows_from(PointSet s) const {
    Subspace out(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (s >> arrows_[i].source & 1) out.add(basis_vector(i));
    return out;
  }

  /// Span of a·x·b over basis arrows a, b and x in the generating set.
  Subspace ideal_generated(const std::vector<Vec>& gens) const {
    Subspace out(dim());
    for (const auto& x : gens)
      for (std::size_t a = 0; a < dim() && out.dim() < dim(); ++a) {
        const Vec ax = multiply(basis_vector(a), x);
        if (std::all_of(ax.begin(), ax.end(), [](const Rational& v) { return v == 0; })) continue;
        for (std::size_t b = 0; b < dim(); ++b) out.add(multiply(ax, basis_vector(b)));
      }
    return out;
  }

  bool is_two_sided_ideal(const Subspace& s) const {
    for (const auto& x : s.basis())
      for (std::size_t a = 0; a < dim(); ++a) {
        if (!s.contains(multiply(basis_vector(a), x)) || !s.contains(multiply(x, basis_vector(a)))) return false;
      }
    return true;
  }

  /// Θ(I): points whose unit arrow lies in I. For ideals this is the union
  /// of supports of the unit-supported elements of I.
  PointSet unit_support(const Subspace& ideal) const {
    PointSet out = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      if (arrows_[i].word.empty() && ideal.contains(basis_vector(i))) out |= PointSet(1) << arrows_[i].source;
    return out;
  }

  /// Span of x·y for x ∈ I, y ∈ J.
  Subspace product(const Subspace& i, const Subspace& j) const {
    Subspace out(dim());
    for (const auto& x : i.basis())
      for (const auto& y : j.basis()) out.add(multiply(x, y));
    return out;
  }

 private:
  int index(const std::pair<Word, int>& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::logic_error("product arrow missing from the basis");
    return static_cast<int>(it->second);
  }

  std::vector<Arrow> arrows_;
  std::map<std::pair<Word, int>, std::size_t> index_;
  std::vector<std::vector<int>> product_;
  std::vector<int> star_;
};

struct IdealLatticeReport {
  bool refused = false;
  std::string reason;
  int points = 0, orbit_count = 0, dimension = 0;
  std::size_t invariant_subsets = 0, ideals = 0;
  bool associative = false;
  bool matrix_units = false;      // each orbit block is a full matrix algebra
  bool ideals_are_blocks = false;  // ideal generated by any element is a sum of blocks
  bool xi_ideals = false;          // Ξ(U) is a two-sided ideal
  bool theta_xi_identity = false;
  bool theta_bijective = false;
  bool theta_monotone = false;
  bool theta_meets = false;  // Θ(I∩J) = Θ(I) ∩ Θ(J)
  bool primes_match_quasi_orbits = false;
  std::vector<std::pair<PointSet, PointSet>> table;  // (U, Θ(Ξ(U)))

  bool ok() const {
    return !refused && associative && matrix_units && ideals_are_blocks && xi_ideals && theta_xi_identity &&
           theta_bijective && theta_monotone && theta_meets && primes_match_quasi_orbits &&
           ideals == invariant_subsets;
  }
};

namespace detail {

inline Subspace intersect(const Subspace& a, const Subspace& b, const FiniteAlgebra& alg) {
  // ideals here are spanned by arrows, so the meet is spanned by the shared arrows
  Subspace out(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    const auto e = alg.basis_vector(i);
    if (a.contains(e) && b.contains(e)) out.add(e);
  }
  return out;
}

}  // namespace detail

/// Checks the correspondence between two-sided ideals of the algebra and
/// invariant subsets: ideals are the sums of orbit blocks, Ξ(U) is the span
/// of arrows with source in U, Θ(I) the unit support of I.
inline IdealLatticeReport ideal_lattice_check(const Groupoid& g, std::uint64_t seed = 0, int random_elements = 8) {
  IdealLatticeReport rep;
  detail::require_finite(g, "ideal_lattice_check");
  rep.points = g.space().size();
  std::optional<FiniteAlgebra> maybe;
  try {
    maybe.emplace(g);
  } catch (const std::length_error& e) {
    rep.refused = true;
    rep.reason = std::string("not principal: ") + e.what();
    return rep;
  }
  const auto& alg = *maybe;
  if (!alg.principal()) {
    rep.refused = true;
    rep.reason = "not principal: some point carries nontrivial isotropy";
    return rep;
  }
  const auto orb = orbits(g);
  const auto lat = invariant_lattice(g);
  rep.orbit_count = static_cast<int>(orb.blocks.size());
  rep.dimension = static_cast<int>(alg.dim());
  rep.invariant_subsets = lat.members.size();
  rep.associative = alg.associative();

  // matrix units: e_yx for x, y in one orbit is the unique arrow x → y and
  // e_zy e_yx = e_zx, e_wz e_yx = 0 for z ≠ y
  std::map<std::pair<int, int>, std::size_t> unit_of;
  bool units_ok = true;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    const auto& a = alg.arrows()[i];
    units_ok = units_ok && unit_of.emplace(std::make_pair(a.range, a.source), i).second &&
               orb.block_of[a.source] == orb.block_of[a.range];
  }
  std::size_t expected_dim = 0;
  for (const auto& b : orb.blocks) expected_dim += b.size() * b.size();
  units_ok = units_ok && expected_dim == alg.dim();
  for (std::size_t i = 0; units_ok && i < alg.dim(); ++i)
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      const auto &a = alg.arrows()[i], &b = alg.arrows()[j];
      const int p = alg.product(i, j);
      if (a.source == b.range) units_ok = units_ok && p == static_cast<int>(unit_of.at({a.range, b.source}));
      else units_ok = units_ok && p < 0;
      units_ok = units_ok && alg.star(i) == static_cast<int>(unit_of.at({a.source, a.range}));
    }
  rep.matrix_units = units_ok;

  // Ideals by central-idempotent support: one per set of orbit blocks, listed
  // in the order of the invariant lattice.
  std::vector<Subspace> ideals;
  for (PointSet u : lat.members) ideals.push_back(alg.arrows_from(u));
  rep.ideals = ideals.size();

  // completeness: the ideal generated by an element is the sum of the
  // blocks it meets
  std::mt19937_64 rng(seed);
  bool blocks_ok = true;
  for (int t = 0; t < random_elements && blocks_ok; ++t) {
    FiniteAlgebra::Vec x(alg.dim());
    PointSet touched = 0;
    for (std::size_t i = 0; i < alg.dim(); ++i)
      if (rng() % 3 == 0) {
        x[i] = static_cast<int>(rng() % 5) - 2;
        if (x[i] != 0) touched |= orb.mask(orb.block_of[alg.arrows()[i].source]);
      }
    blocks_ok = alg.ideal_generated({x}) == alg.arrows_from(touched);
  }
  rep.ideals_are_blocks = blocks_ok;

  rep.xi_ideals = rep.theta_xi_identity = true;
  std::vector<PointSet> theta;
  for (std::size_t i = 0; i < lat.members.size(); ++i) {
    rep.xi_ideals = rep.xi_ideals && alg.is_two_sided_ideal(ideals[i]);
    theta.push_back(alg.unit_support(ideals[i]));
    rep.theta_xi_identity = rep.theta_xi_identity && theta.back() == lat.members[i];
    rep.table.emplace_back(lat.members[i], theta.back());
  }
  std::vector<PointSet> sorted = theta;
  std::sort(sorted.begin(), sorted.end());
  rep.theta_bijective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted == lat.members;

  rep.theta_monotone = rep.theta_meets = true;
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = 0; j < ideals.size(); ++j) {
      if (ideals[j].contains(ideals[i])) rep.theta_monotone = rep.theta_monotone && (theta[i] & ~theta[j]) == 0;
      rep.theta_meets = rep.theta_meets && alg.unit_support(detail::intersect(ideals[i], ideals[j], alg)) ==
                                               (theta[i] & theta[j]);
    }

  // prime: proper, and IJ ⊆ P forces I ⊆ P or J ⊆ P
  const PointSet all = lat.members.back();
  std::vector<PointSet> prime_complements;
  for (std::size_t p = 0; p < ideals.size(); ++p) {
    if (theta[p] == all) continue;
    bool prime = true;
    for (std::size_t i = 0; i < ideals.size() && prime; ++i)
      for (std::size_t j = 0; j < ideals.size() && prime; ++j)
        if (ideals[p].contains(alg.product(ideals[i], ideals[j])))
          prime = ideals[p].contains(ideals[i]) || ideals[p].contains(ideals[j]);
    if (prime) prime_complements.push_back(all & ~theta[p]);
  }
  std::vector<PointSet> quasi;
  for (std::size_t b = 0; b < orb.blocks.size(); ++b) quasi.push_back(orb.mask(static_cast<int>(b)));
  std::sort(prime_complements.begin(), prime_complements.end());
  std::sort(quasi.begin(), quasi.end());
  rep.primes_match_quasi_orbits = prime_complements == quasi;
  return rep;
}

}  // namespace ample

#endif
