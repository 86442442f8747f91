#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "ample/paradox.hpp"
#include "support.hpp"

using namespace ample;
using namespace testsupport;

namespace {

const UnitSpace S2 = UnitSpace::shift(2);

Clopen cyl(std::vector<std::string> ws, const UnitSpace& s = S2) { return Clopen::cylinders(s, ws); }

ParadoxWitness cuntz21(const Groupoid& g) {
  return {Clopen::whole(g.space()), 2, 1, {{{g.generator(0), 1}}, {{g.generator(1), 1}}}};
}

}  // namespace

TEST(VerifyWitness, CuntzExamples) {
  const Groupoid g2(cuntz(2));
  EXPECT_TRUE(verify_witness(g2, cuntz21(g2)));
  const Groupoid g3(cuntz(3));
  // A = 2X, rows U_{21,2} and U_{22,2}
  const auto w = cuntz_witness(g3, "2", 2);
  EXPECT_TRUE(verify_witness(g3, w));
  EXPECT_EQ(g3.dom(w.rows[0][0].v), cyl({"2"}, g3.space()));
  EXPECT_EQ(g3.ran(w.rows[0][0].v), cyl({"21"}, g3.space()));
  EXPECT_EQ(g3.ran(w.rows[1][0].v), cyl({"22"}, g3.space()));
}

TEST(VerifyWitness, NamesViolatedClause) {
  const Groupoid g(cuntz(2));
  auto w = cuntz21(g);
  w.rows[1][0].v = g.generator(0);
  auto v = verify_witness(g, w);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.reason.rfind("packing", 0), 0u) << v.reason;
  w = cuntz21(g);
  w.rows[0][0].v = g.restrict(g.generator(0), cyl({"1"}));
  v = verify_witness(g, w);
  EXPECT_EQ(v.reason.rfind("covering", 0), 0u) << v.reason;
  w = cuntz21(g);
  w.l = 2;
  EXPECT_EQ(verify_witness(g, w).reason.rfind("shape", 0), 0u);
  w = cuntz21(g);
  w.rows.pop_back();
  EXPECT_FALSE(verify_witness(g, w));
}

TEST(VerifyWitness, RotationHasNoWitness) {
  // Exhaust depth ≤ 3 candidates: the packing search finishes without
  // exhausting its budget and finds nothing, for every k > l, k ≤ 4.
  const Groupoid g(rotation(3));
  const auto X = Clopen::whole(g.space());
  for (int k = 2; k <= 4; ++k)
    for (int l = 1; l < k; ++l) {
      const auto r = search_witness(g, X, k, l, 3, 1000000);
      EXPECT_FALSE(r.result);
      EXPECT_FALSE(r.budget_exhausted);
    }
}

TEST(WitnessToLeq, Examples) {
  const Groupoid g(cuntz(2));
  const auto X = Clopen::whole(S2);
  const auto c = witness_to_leq(g, cuntz21(g));
  EXPECT_TRUE(c.remainder.empty());
  EXPECT_TRUE(verify_leq(g, LabeledFamily::multiple(X, 2), LabeledFamily::single(X), c));
  // rows U_{11,ε}, U_{12,ε}: remainder is 2X
  const auto u11 = g.compose(g.generator(0), g.generator(0));
  const auto u12 = g.compose(g.generator(0), g.generator(1));
  const ParadoxWitness w{X, 2, 1, {{{u11, 1}}, {{u12, 1}}}};
  ASSERT_TRUE(verify_witness(g, w));
  const auto c2 = witness_to_leq(g, w);
  EXPECT_EQ(c2.remainder, LabeledFamily::single(cyl({"2"})));
  EXPECT_TRUE(verify_leq(g, LabeledFamily::multiple(X, 2), LabeledFamily::single(X), c2));
  auto bad = w;
  bad.rows[1][0].v = u11;
  EXPECT_THROW(witness_to_leq(g, bad), std::invalid_argument);
}

TEST(LeqToWitness, Examples) {
  const Groupoid g(cuntz(2));
  const auto X = Clopen::whole(S2);
  const auto w = leq_to_witness(g, X, 2, 1, witness_to_leq(g, cuntz21(g)));
  EXPECT_TRUE(verify_witness(g, w));
  // subset certificates give no drop: k ≤ l is refused
  const auto sub = subset_cert(g, X, X);
  EXPECT_THROW(leq_to_witness(g, X, 1, 1, sub), std::invalid_argument);
  // two blocks on disjoint cylinders, merged
  const auto w1 = cuntz_witness(g, "1", 2), w2 = cuntz_witness(g, "2", 2);
  const auto c1 = witness_to_leq(g, w1), c2 = witness_to_leq(g, w2);
  const auto back1 = leq_to_witness(g, w1.a, 2, 1, c1), back2 = leq_to_witness(g, w2.a, 2, 1, c2);
  const auto merged = merge_blocks(g, back1, back2);
  EXPECT_TRUE(verify_witness(g, merged));
  EXPECT_EQ(merged.a, X);
}

TEST(Transform, WeakenCuntz) {
  const Groupoid g(cuntz(2));
  const auto w32 = weaken(g, cuntz21(g), 3, 2);
  EXPECT_TRUE(verify_witness(g, w32));
  EXPECT_EQ(w32.k, 3);
  EXPECT_EQ(w32.l, 2);
  for (int l2 = 1; l2 <= 3; ++l2)
    for (int k2 = l2 + 1; k2 <= 6; ++k2) EXPECT_TRUE(verify_witness(g, weaken(g, cuntz21(g), k2, l2))) << k2 << l2;
  EXPECT_THROW(weaken(g, w32, 3, 1), std::invalid_argument);
  EXPECT_THROW(weaken(g, w32, 3, 3), std::invalid_argument);
}

TEST(Transform, Disjointify) {
  const Groupoid g(cuntz(2));
  EXPECT_EQ(disjointify(g, cuntz21(g)), cuntz21(g));
  const auto X = Clopen::whole(S2);
  const auto u11 = g.compose(g.generator(0), g.generator(0));  // X → 11X
  const auto u12 = g.compose(g.generator(0), g.generator(1));  // X → 12X
  const auto u2 = g.generator(1);                              // X → 2X
  // row 1 covers X twice over 1X: u11 on X, u2 on 1X
  const ParadoxWitness w{X, 2, 1, {{{u11, 1}, {g.restrict(u2, cyl({"1"})), 1}}, {{u12, 1}}}};
  ASSERT_TRUE(verify_witness(g, w));
  const auto d = disjointify(g, w);
  EXPECT_TRUE(verify_witness(g, d));
  EXPECT_EQ(d.rows[0].size(), 1u);
  const ParadoxWitness w2{X, 2, 1, {{{g.restrict(u2, cyl({"1"})), 1}, {u11, 1}}, {{u12, 1}}}};
  const auto d2 = disjointify(g, w2);
  EXPECT_TRUE(verify_witness(g, d2));
  EXPECT_EQ(g.dom(d2.rows[0][1].v), cyl({"2"}));
}

TEST(Pseudopair, Merge) {
  const Groupoid g(cuntz(2));
  const auto [s1, s2] = merge_to_pseudopair(g, cuntz21(g));
  EXPECT_EQ(s1, g.generator(0));
  EXPECT_EQ(s2, g.generator(1));
  // a three-piece row
  const auto X = Clopen::whole(S2);
  const auto u1 = g.generator(0);
  ParadoxWitness w{X, 2, 1, {{}, {{g.generator(1), 1}}}};
  for (const auto& c : {"1", "21", "22"}) w.rows[0].push_back({g.restrict(u1, cyl({c})), 1});
  ASSERT_TRUE(verify_witness(g, w));
  const auto [m1, m2] = merge_to_pseudopair(g, w);
  EXPECT_EQ(m1.pieces().size(), 1u);
  EXPECT_EQ(g.dom(m1), X);
  EXPECT_EQ(g.dom(m2), X);
  EXPECT_TRUE(disjoint(g.ran(m1), g.ran(m2)));
  EXPECT_TRUE(verify_witness(g, split_pseudopair(g, X, m1, m2)));
  // overlapping row domains are refused: row 1 covers 1X twice
  const auto u11 = g.compose(u1, u1), u12 = g.compose(u1, g.generator(1));
  const ParadoxWitness o{X, 2, 1, {{{u11, 1}, {g.restrict(g.generator(1), cyl({"1"})), 1}}, {{u12, 1}}}};
  ASSERT_TRUE(verify_witness(g, o));
  EXPECT_THROW(merge_to_pseudopair(g, o), std::invalid_argument);
  EXPECT_NO_THROW(merge_to_pseudopair(g, disjointify(g, o)));
}

TEST(SearchWitness, CuntzPrefixes) {
  for (int n : {2, 3}) {
    const Groupoid g(cuntz(n));
    for (int len = 0; len <= 2; ++len)
      for (const auto& alpha : all_words(g.space(), len)) {
        const auto a = Clopen::cylinders(g.space(), {alpha});
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = search_witness(g, a, 2, 1, len + 1, 200000);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ASSERT_TRUE(r.result) << n << " " << alpha;
        EXPECT_TRUE(verify_witness(g, *r.result));
        EXPECT_LT(secs, 1.0);
      }
  }
}

TEST(SearchWitness, OdometerFindsNothing) {
  const Groupoid g(odometer(3));
  const auto r = search_witness(g, Clopen::whole(g.space()), 2, 1, 3, 50000);
  EXPECT_FALSE(r.result);
}

TEST(RoundTrip, FuzzedWitnesses) {
  std::mt19937_64 rng(1234);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    const Groupoid g(cuntz(2 + t % 2));
    const auto& space = g.space();
    std::string alpha;
    for (int i = uniform(rng, 0, 2); i > 0; --i) alpha += space.letter(uniform(rng, 0, space.size() - 1));
    const int l = uniform(rng, 1, 2), k = uniform(rng, l + 1, 4);
    auto w = weaken(g, cuntz_witness(g, alpha, 2), k, l);
    // split a random entry into cells and shuffle the rows
    for (auto& row : w.rows) {
      if (row.empty() || rng() % 2) continue;
      auto e = row.back();
      row.pop_back();
      const auto d = g.dom(e.v);
      for (const auto& c : d.expand(d.depth() + 1)) row.push_back({g.restrict(e.v, Clopen::cylinders(space, {c})), e.m});
      std::shuffle(row.begin(), row.end(), rng);
    }
    ASSERT_TRUE(verify_witness(g, w));
    const auto c = witness_to_leq(g, w);
    ASSERT_TRUE(verify_leq(g, LabeledFamily::multiple(w.a, k), LabeledFamily::multiple(w.a, l), c));
    const auto back = leq_to_witness(g, w.a, k, l, c);
    EXPECT_TRUE(verify_witness(g, back));
    EXPECT_TRUE(verify_leq(g, LabeledFamily::multiple(w.a, k), LabeledFamily::multiple(w.a, l),
                           witness_to_leq(g, back)));
    ++checked;
  }
  EXPECT_EQ(checked, 150);
}
