#include <gtest/gtest.h>

#include "support.hpp"

using namespace ample;
using namespace testsupport;

namespace {

const UnitSpace S2 = UnitSpace::shift(2);

Clopen cyl(std::vector<std::string> ws, const UnitSpace& s = S2) { return Clopen::cylinders(s, ws); }

LabeledFamily fam(std::vector<Clopen> cs) { return LabeledFamily::of(cs.front().space(), cs); }

// [X×{1}, X×{2}] ∼ [X×{1}] in cuntz(2)
EquivCertificate cuntz_cert(const Groupoid& g) {
  return {{{g.generator(0), 1, 1}, {g.generator(1), 2, 1}}};
}

}  // namespace

TEST(Family, AddAndNormalize) {
  const auto a = cyl({"1"}), b = cyl({"21"});
  EXPECT_EQ(add(LabeledFamily::single(a), LabeledFamily::single(b)), fam({a, b}));
  EXPECT_EQ(LabeledFamily::normalize(S2, {{Clopen(S2), 1}, {a, 5}}), LabeledFamily::single(a));
  const auto f = fam({a, b, a});
  EXPECT_EQ(add(f, LabeledFamily(S2)), f);
  EXPECT_EQ(add(LabeledFamily(S2), f), f);
  // equal labels merge
  EXPECT_EQ(LabeledFamily::normalize(S2, {{a, 2}, {b, 2}}), LabeledFamily::single(unite(a, b)));
  EXPECT_THROW(add(f, LabeledFamily(UnitSpace::finite(2))), SpaceMismatch);
}

TEST(VerifyEquiv, Examples) {
  const Groupoid g(cuntz(2));
  const auto x = LabeledFamily::single(cyl({""}));
  EXPECT_TRUE(verify_equiv(g, x, x, {{{g.identity(cyl({""})), 1, 1}}}));
  const auto two = LabeledFamily::multiple(cyl({""}), 2);
  EXPECT_TRUE(verify_equiv(g, two, x, cuntz_cert(g)));
  // [1X×{1}, 2X×{1}] is just [X×{1}]
  EXPECT_EQ(LabeledFamily::normalize(S2, {{cyl({"1"}), 1}, {cyl({"2"}), 1}}), x);
  const EquivCertificate bad{{{g.generator(0), 1, 1}, {g.generator(0), 2, 1}}};
  const auto v = verify_equiv(g, two, x, bad);
  EXPECT_FALSE(v);
  EXPECT_NE(v.reason.find("range overlaps"), std::string::npos) << v.reason;
}

TEST(VerifyEquiv, RejectsMalformed) {
  const Groupoid g(cuntz(2));
  const auto x = LabeledFamily::single(cyl({""}));
  // a piece whose domain exceeds its word's domain
  const Bisection wild(S2, {{gen_word(0, true), cyl({""})}});
  EXPECT_FALSE(verify_equiv(g, x, x, {{{wild, 1, 1}}}));
  EXPECT_FALSE(verify_equiv(g, x, x, {{{g.identity(cyl({""})), 0, 1}}}));
  // misses part of the first family
  EXPECT_FALSE(verify_equiv(g, x, LabeledFamily::single(cyl({"1"})), {{{g.identity(cyl({"1"})), 1, 1}}}));
}

TEST(CertAlgebra, Examples) {
  const Groupoid g(cuntz(2));
  const auto X = cyl({""});
  const auto two = LabeledFamily::multiple(X, 2), one = LabeledFamily::single(X);
  const auto back = symmetric(g, two, one, cuntz_cert(g));
  EXPECT_TRUE(verify_equiv(g, one, two, back));
  EXPECT_EQ(back.triples[0].w, g.inverse(g.generator(0)));
  EXPECT_TRUE(verify_equiv(g, one, one, transitive(g, one, one, one, reflexive(g, one), reflexive(g, one))));
  // X ∼ [1X×{1}, 2X×{2}] by identities, then chain
  const auto split = fam({cyl({"1"}), cyl({"2"})});
  const EquivCertificate c2{{{g.identity(cyl({"1"})), 1, 1}, {g.identity(cyl({"2"})), 1, 2}}};
  ASSERT_TRUE(verify_equiv(g, one, split, c2));
  const auto chained = transitive(g, two, one, split, cuntz_cert(g), c2);
  EXPECT_TRUE(verify_equiv(g, two, split, chained));
  EXPECT_EQ(chained.triples.size(), 2u);
  EXPECT_THROW(transitive(g, one, two, split, cuntz_cert(g), c2), std::invalid_argument);
}

TEST(CertAlgebra, RandomizedClosure) {
  std::mt19937_64 rng(23);
  for (const auto& pres : {cuntz(2), cuntz(3), pair_groupoid(4), rotation(3, false), odometer(3)}) {
    const Groupoid g(pres);
    for (int t = 0; t < 40; ++t) {
      const auto a = random_cert(g, rng), b = random_cert(g, rng);
      ASSERT_TRUE(verify_equiv(g, a.x, a.y, a.cert));
      EXPECT_TRUE(verify_equiv(g, a.x, a.x, reflexive(g, a.x)));
      const auto s = symmetric(g, a.x, a.y, a.cert);
      EXPECT_TRUE(verify_equiv(g, a.y, a.x, s));
      EXPECT_TRUE(verify_equiv(g, a.x, a.x, transitive(g, a.x, a.y, a.x, a.cert, s)));
      EXPECT_TRUE(verify_equiv(g, add(a.x, b.x), add(a.y, b.y), sum(g, a.x, a.y, a.cert, b.x, b.y, b.cert)));
      // a + b ∼ b + a
      const auto ab = add(a.x, b.x), ba = add(b.x, a.x);
      const auto swap = sum(g, a.x, a.x, reflexive(g, a.x), b.x, b.x, reflexive(g, b.x));
      EXPECT_TRUE(verify_equiv(g, ab, ab, swap));
      auto comm = search_equiv(g, ab, ba, 0, 20000);
      ASSERT_TRUE(comm.result.has_value());
      EXPECT_TRUE(verify_equiv(g, ab, ba, *comm.result));
    }
  }
}

TEST(SearchEquiv, Examples) {
  const Groupoid g(cuntz(2));
  const auto X = cyl({""});
  const auto one = LabeledFamily::single(X);
  const auto r0 = search_equiv(g, one, one, 0, 100);
  ASSERT_TRUE(r0.result);
  EXPECT_EQ(*r0.result, reflexive(g, one));
  const auto two = LabeledFamily::multiple(X, 2);
  const auto r1 = search_equiv(g, two, one, 1, 10000);
  ASSERT_TRUE(r1.result);
  EXPECT_TRUE(verify_equiv(g, two, one, *r1.result));
  const Groupoid p(pair_groupoid(2));
  const auto f2 = UnitSpace::finite(2);
  const auto a = LabeledFamily::single(Clopen::points(f2, {0})), b = LabeledFamily::single(Clopen::points(f2, {1}));
  const auto r2 = search_equiv(p, a, b, 1, 100);
  ASSERT_TRUE(r2.result);
  EXPECT_EQ(r2.result->triples.size(), 1u);
  EXPECT_EQ(r2.result->triples[0].w, p.generator(0));
  // pigeonhole: nothing for 2[X] ∼ [X] under rotation
  const Groupoid r(rotation(3));
  const auto R = Clopen::whole(r.space());
  const auto none = search_equiv(r, LabeledFamily::multiple(R, 2), LabeledFamily::single(R), 3, 10000);
  EXPECT_FALSE(none.result);
  EXPECT_FALSE(none.budget_exhausted);
}

TEST(SearchEquiv, SoundnessFuzz) {
  std::mt19937_64 rng(31);
  int found = 0;
  for (int t = 0; t < 500; ++t) {
    const auto pres = t % 3 == 0 ? cuntz(2) : t % 3 == 1 ? pair_groupoid(4) : odometer(3);
    const Groupoid g(pres);
    const auto inst = random_cert(g, rng, 4);
    // search for either the generated relation or a random one
    const auto y = (t % 2) ? inst.y : LabeledFamily::of(g.space(), random_parts(g.space(), rng));
    const auto r = search_equiv(g, inst.x, y, 2, 3000);
    if (r.result) {
      ++found;
      EXPECT_TRUE(verify_equiv(g, inst.x, y, *r.result));
    }
  }
  EXPECT_GT(found, 100);
}

TEST(Leq, SubsetCert) {
  const Groupoid g(cuntz(2));
  const auto c = subset_cert(g, cyl({"11"}), cyl({"1"}));
  EXPECT_EQ(c.remainder, LabeledFamily::single(cyl({"12"})));
  EXPECT_TRUE(verify_leq(g, LabeledFamily::single(cyl({"11"})), LabeledFamily::single(cyl({"1"})), c));
  const auto same = subset_cert(g, cyl({"2"}), cyl({"2"}));
  EXPECT_TRUE(same.remainder.empty());
  EXPECT_EQ(same.equivalence, reflexive(g, LabeledFamily::single(cyl({"2"}))));
  EXPECT_THROW(subset_cert(g, cyl({"1"}), cyl({"2"})), std::invalid_argument);
}

TEST(Leq, RejectsCorrupted) {
  const Groupoid g(cuntz(2));
  auto c = subset_cert(g, cyl({"11"}), cyl({"1"}));
  // remainder now overlaps the image of the first family
  c.remainder = LabeledFamily::single(cyl({"1"}));
  c.equivalence.triples[1].w = g.identity(cyl({"1"}));
  EXPECT_FALSE(verify_leq(g, LabeledFamily::single(cyl({"11"})), LabeledFamily::single(cyl({"1"})), c));
}

TEST(Leq, SearchAndChain) {
  const Groupoid g(cuntz(2));
  const auto x = LabeledFamily::single(cyl({"11"})), y = LabeledFamily::single(cyl({"2"}));
  const auto r = search_leq(g, x, y, 3, 10000);
  ASSERT_TRUE(r.result);
  EXPECT_TRUE(verify_leq(g, x, y, *r.result));
  const auto z = LabeledFamily::single(cyl({""}));
  const auto up = subset_cert(g, cyl({"2"}), cyl({""}));
  const auto chain = leq_transitive(g, x, y, z, *r.result, up);
  EXPECT_TRUE(verify_leq(g, x, z, chain));
}

TEST(Rho, Examples) {
  const Groupoid g(cuntz(2));
  const auto X = cyl({""});
  EXPECT_EQ(rho(int_function(S2, {X})), LabeledFamily::single(X));
  const std::vector<Clopen> first{X, cyl({"1"})}, second{cyl({"1"}), cyl({"1"}), cyl({"2"})};
  EXPECT_EQ(rho(int_function(S2, first)), fam({X, cyl({"1"})}));
  const auto c = rho_welldef_cert(g, first, second);
  EXPECT_TRUE(verify_equiv(g, family_of(S2, first), family_of(S2, second), c));
  for (const auto& t : c.triples) EXPECT_TRUE(t.w.pieces()[0].word.empty());
  EXPECT_THROW(rho_welldef_cert(g, first, {X}), std::invalid_argument);
  EXPECT_TRUE(rho(IntFunction(S2)).empty());
}

TEST(Rho, Invariance) {
  const Groupoid g(cuntz(2));
  const auto s = g.generator(0);
  const std::vector<Clopen> parts{cyl({"1"}), cyl({"11"}), cyl({"121"})};
  const auto f = int_function(S2, parts);
  const auto c = rho_invariance_cert(g, s, level_decomposition(f));
  EXPECT_TRUE(verify_equiv(g, rho(f), rho(pullback(g, s, f)), c));
  EXPECT_EQ(pullback(g, s, f), int_function(S2, {cyl({""}), cyl({"1"}), cyl({"21"})}));
  EXPECT_THROW(pullback(g, s, int_function(S2, {cyl({"2"})})), std::invalid_argument);
}

TEST(Rho, AdditivityAndFaithfulness) {
  std::mt19937_64 rng(41);
  for (const auto& pres : {cuntz(2), cuntz(3), pair_groupoid(3)}) {
    const Groupoid g(pres);
    for (int t = 0; t < 60; ++t) {
      const auto f = int_function(g.space(), random_parts(g.space(), rng));
      const auto h = int_function(g.space(), random_parts(g.space(), rng));
      const auto c = rho_additivity_cert(g, f, h);
      EXPECT_TRUE(verify_equiv(g, rho(f + h), add(rho(f), rho(h)), c));
      EXPECT_EQ(rho(f).empty(), f.is_zero());
    }
  }
}
