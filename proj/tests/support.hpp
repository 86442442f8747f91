#ifndef AMPLE_TESTS_SUPPORT_HPP
#define AMPLE_TESTS_SUPPORT_HPP

// Random instance generators shared by the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "ample/starconv.hpp"

namespace testsupport {

using namespace ample;

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// A random cell inside `a` (shift: a cylinder at most `extra` levels below a cell of a).
inline Cell random_cell_in(const Clopen& a, std::mt19937_64& rng, int extra = 2) {
  const auto& cs = a.cells();
  Cell c = cs[uniform(rng, 0, static_cast<int>(cs.size()) - 1)];
  if (a.space().is_shift())
    for (int i = uniform(rng, 0, extra); i > 0; --i) c.word += a.space().letter(uniform(rng, 0, a.space().size() - 1));
  return c;
}

inline Clopen random_clopen(const UnitSpace& space, std::mt19937_64& rng, int max_depth = 2, int max_cells = 3) {
  std::vector<Cell> cells;
  for (int i = uniform(rng, 0, max_cells); i > 0; --i) {
    if (space.is_finite()) {
      cells.push_back(Cell::at(uniform(rng, 0, space.size() - 1)));
    } else {
      std::string w;
      for (int j = uniform(rng, 0, max_depth); j > 0; --j) w += space.letter(uniform(rng, 0, space.size() - 1));
      cells.push_back(Cell::cylinder(w));
    }
  }
  return Clopen::of(space, cells);
}

inline std::vector<Clopen> random_parts(const UnitSpace& space, std::mt19937_64& rng, int max_parts = 3,
                                        int max_depth = 2) {
  std::vector<Clopen> out;
  for (int i = uniform(rng, 1, max_parts); i > 0; --i) out.push_back(random_clopen(space, rng, max_depth));
  return out;
}

struct CertInstance {
  LabeledFamily x, y;
  EquivCertificate cert;
};

/// A random verified equivalence x ∼ y built from disjoint pieces of
/// enumerated words. Labels are drawn contiguously so both families are
/// canonical as built.
inline CertInstance random_cert(const Groupoid& g, std::mt19937_64& rng, int attempts = 6, int depth = 2) {
  const auto& space = g.space();
  const auto pool = g.enumerate(depth).bisections;
  std::vector<Clopen> doms, rans;
  std::vector<Triple> triples;
  for (int a = 0; a < attempts; ++a) {
    const auto& b = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
    const auto& piece = b.pieces().front();
    const auto cell = Clopen::single(space, random_cell_in(piece.domain, rng));
    const auto w = g.restrict(b, cell);
    const auto r = g.ran(w);
    const int from = uniform(rng, 1, static_cast<int>(doms.size()) + 1);
    const int to = uniform(rng, 1, static_cast<int>(rans.size()) + 1);
    if (from <= static_cast<int>(doms.size()) && !disjoint(doms[from - 1], cell)) continue;
    if (to <= static_cast<int>(rans.size()) && !disjoint(rans[to - 1], r)) continue;
    if (from > static_cast<int>(doms.size())) doms.emplace_back(space);
    if (to > static_cast<int>(rans.size())) rans.emplace_back(space);
    doms[from - 1] = unite(doms[from - 1], cell);
    rans[to - 1] = unite(rans[to - 1], r);
    triples.push_back({w, from, to});
  }
  return {LabeledFamily::of(space, doms), LabeledFamily::of(space, rans), {triples}};
}

/// A random piece of an enumerated word restricted to a random sub-clopen.
inline Bisection random_bisection(const Groupoid& g, std::mt19937_64& rng, int depth = 2) {
  const auto pool = g.enumerate(depth).bisections;
  Bisection s(g.space());
  for (int i = uniform(rng, 1, 3); i > 0; --i) {
    const auto& b = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
    const auto cell = Clopen::single(g.space(), random_cell_in(b.pieces().front().domain, rng));
    const auto piece = g.restrict(b, cell);
    if (disjoint(g.dom(s), g.dom(piece)) && disjoint(g.ran(s), g.ran(piece))) s = g.join(s, piece);
  }
  return s;
}

inline Rational random_coef(std::mt19937_64& rng) {
  int num = 0;
  while (num == 0) num = uniform(rng, -3, 3);
  return rational(num, uniform(rng, 1, 2));
}

/// A few terms on pieces drawn from `pool`, each on a random cell of the
/// piece's domain at most `extra` levels down.
inline ConvElement random_element(const Groupoid& g, const std::vector<Bisection>& pool, std::mt19937_64& rng,
                                  int max_terms = 3, int extra = 1) {
  std::vector<ConvTerm> terms;
  for (int i = uniform(rng, 0, max_terms); i > 0; --i) {
    const auto& b = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
    const auto& piece = b.pieces()[uniform(rng, 0, static_cast<int>(b.pieces().size()) - 1)];
    terms.push_back({piece.word, random_cell_in(piece.domain, rng, extra), random_coef(rng)});
  }
  return ConvElement::from_terms(g, terms);
}

}  // namespace testsupport

#endif
