#include <gtest/gtest.h>

#include <chrono>

#include "ample/orbitlat.hpp"

using namespace ample;

namespace {

// Every set partition of {0..n-1} as a block assignment (restricted growth strings).
void partitions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  const int top = cur.empty() ? 0 : *std::max_element(cur.begin(), cur.end()) + 1;
  for (int b = 0; b <= top; ++b) {
    cur.push_back(b);
    partitions(n, cur, out);
    cur.pop_back();
  }
}

// Presentations realizing the partition: a chain or a star inside each block.
Presentation realize(const std::vector<int>& blocks, bool star_shape) {
  const int n = static_cast<int>(blocks.size());
  std::vector<std::pair<int, int>> arrows;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (blocks[p] != blocks[q]) continue;
      bool first_after_p = true;
      for (int r = p + 1; r < q; ++r)
        if (blocks[r] == blocks[p]) first_after_p = false;
      bool p_is_least = true;
      for (int r = 0; r < p; ++r)
        if (blocks[r] == blocks[p]) p_is_least = false;
      if (star_shape ? p_is_least : first_after_p) arrows.emplace_back(star_shape ? q : p, star_shape ? p : q);
    }
  return finite_groupoid(n, arrows);
}

// Invariant subsets by brute force over all subsets and all enumerated arrows.
std::vector<PointSet> brute_invariant(const Groupoid& g) {
  const int n = g.space().size();
  const auto words = g.enumerate(n).bisections;
  std::vector<PointSet> out;
  for (PointSet s = 0; s < (PointSet(1) << n); ++s) {
    bool ok = true;
    for (const auto& b : words) {
      const auto m = g.word_map(b.pieces().front().word);
      const auto& t = m.targets();
      for (int p = 0; p < n; ++p)
        if (t[p] >= 0 && (s >> p & 1) && !(s >> t[p] & 1)) ok = false;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

// Z/2 = {e, s} on two points with s fixing 0 and 1: isotropy everywhere.
Presentation flip_fixing_point() {
  Generator s{"s", PartialInjection{{{0, 0}, {1, 1}}}, 1};
  return transformation(UnitSpace::finite(2), {s}, MultiplicationTable{{0, 1}, {1, 0}});
}

}  // namespace

TEST(Orbits, Examples) {
  EXPECT_EQ(orbits(Groupoid(rotation(3))).blocks.size(), 1u);
  const auto o = orbits(Groupoid(finite_groupoid(3, {{0, 1}})));
  ASSERT_EQ(o.blocks.size(), 2u);
  EXPECT_EQ(o.blocks[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(o.blocks[1], (std::vector<int>{2}));
  EXPECT_EQ(o.block_of, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(orbits(Groupoid(trivial_groupoid(3))).blocks.size(), 3u);
  EXPECT_THROW(orbits(Groupoid(cuntz(2))), std::invalid_argument);
}

TEST(InvariantLattice, Examples) {
  const auto rot = invariant_lattice(Groupoid(rotation(3)));
  EXPECT_EQ(rot.members, (std::vector<PointSet>{0, 7}));
  const auto two = invariant_lattice(Groupoid(finite_groupoid(3, {{0, 1}})));
  EXPECT_EQ(two.members, (std::vector<PointSet>{0, 3, 4, 7}));
  EXPECT_EQ(two.members[two.join[1][2]], 7u);
  EXPECT_EQ(two.members[two.meet[1][3]], 3u);
  EXPECT_EQ(invariant_lattice(Groupoid(trivial_groupoid(3))).members.size(), 8u);
  EXPECT_TRUE(is_invariant(Groupoid(rotation(3)), 7));
  EXPECT_FALSE(is_invariant(Groupoid(rotation(3)), 1));
  EXPECT_EQ(set_to_string(5, 3), "{0,2}");
}

TEST(Algebra, PairGroupoid) {
  const Groupoid g(pair_groupoid(3));
  const FiniteAlgebra alg(g);
  EXPECT_EQ(alg.dim(), 9u);
  EXPECT_TRUE(alg.associative());
  EXPECT_TRUE(alg.principal());
  // Z/3 acts freely, so the rotation is principal; Z/2 fixing a point is not
  EXPECT_TRUE(FiniteAlgebra(Groupoid(rotation(3))).principal());
  EXPECT_FALSE(FiniteAlgebra(Groupoid(flip_fixing_point())).principal());
  EXPECT_THROW(FiniteAlgebra(Groupoid(rotation(3, false)), 6), std::length_error);
}

TEST(Subspace, Basics) {
  Subspace s(3);
  EXPECT_TRUE(s.add({1, 1, 0}));
  EXPECT_FALSE(s.add({2, 2, 0}));
  EXPECT_TRUE(s.add({0, 1, 1}));
  EXPECT_TRUE(s.contains(std::vector<Rational>{1, 0, -1}));
  EXPECT_FALSE(s.contains(std::vector<Rational>{0, 0, 1}));
  Subspace t(3);
  t.add({1, 0, -1});
  EXPECT_TRUE(s.contains(t));
  EXPECT_FALSE(t.contains(s));
}

TEST(IdealCheck, Examples) {
  const auto p3 = ideal_lattice_check(Groupoid(pair_groupoid(3)));
  EXPECT_TRUE(p3.ok());
  EXPECT_EQ(p3.ideals, 2u);
  EXPECT_EQ(p3.dimension, 9);
  const auto split = ideal_lattice_check(Groupoid(finite_groupoid(3, {{0, 1}})));
  EXPECT_TRUE(split.ok());
  EXPECT_EQ(split.ideals, 4u);
  const auto triv = ideal_lattice_check(Groupoid(trivial_groupoid(2)));
  EXPECT_TRUE(triv.ok());
  EXPECT_EQ(triv.ideals, 4u);
  const auto rot = ideal_lattice_check(Groupoid(rotation(3)));
  EXPECT_TRUE(rot.ok());
  EXPECT_EQ(rot.ideals, 2u);
  const auto flip = ideal_lattice_check(Groupoid(flip_fixing_point()));
  EXPECT_TRUE(flip.refused);
  EXPECT_FALSE(flip.ok());
  EXPECT_TRUE(ideal_lattice_check(Groupoid(rotation(3, false))).refused);
}

TEST(IdealCheck, ExhaustiveUpToFivePoints) {
  const auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    partitions(n, cur, all);
    for (const auto& blocks : all)
      for (bool star_shape : {false, true}) {
        const Groupoid g(realize(blocks, star_shape));
        const auto rep = ideal_lattice_check(g, static_cast<std::uint64_t>(checked));
        ASSERT_TRUE(rep.ok()) << g.presentation().name << " " << checked;
        const int k = *std::max_element(blocks.begin(), blocks.end()) + 1;
        ASSERT_EQ(rep.orbit_count, k);
        ASSERT_EQ(rep.ideals, std::size_t(1) << k);
        ASSERT_EQ(invariant_lattice(g).members, brute_invariant(g));
        ++checked;
      }
  }
  EXPECT_EQ(checked, 2 * (1 + 2 + 5 + 15 + 52));
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
}
