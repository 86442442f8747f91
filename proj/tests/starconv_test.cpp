#include <gtest/gtest.h>

#include <map>

#include "ample/starconv.hpp"
#include "support.hpp"

using namespace ample;
using namespace testsupport;

namespace {

using Pointwise = std::map<std::pair<Word, Cell>, Rational>;

std::vector<Cell> cells_at(const UnitSpace& space, const Cell& c, int depth) {
  if (space.is_finite()) return {c};
  std::vector<Cell> out;
  for (auto& w : Clopen::single(space, c).expand(depth)) out.push_back(Cell::cylinder(std::move(w)));
  return out;
}

// Value of a at the arrow (w, x) read straight off the canonical terms.
Rational value_at(const ConvElement& a, const Word& w, const Cell& x) {
  Rational v;
  for (const auto& t : a.terms()) {
    if (!(t.word == w)) continue;
    const auto c = Clopen::single(a.space(), t.cell);
    if (c.contains(x)) v += t.coef;
    else if (c.intersects(x)) throw std::logic_error("oracle cell too coarse");
  }
  return v;
}

// (a ∗ b)(w, x) by summing over arrow pairs, on cells of the given depth.
Pointwise brute_conv(const Groupoid& g, const ConvElement& a, const ConvElement& b, int depth) {
  Pointwise out;
  for (const auto& tb : b.terms())
    for (const auto& x : cells_at(g.space(), tb.cell, depth)) {
      const auto y = g.word_map(tb.word).image_of(x);
      if (!y) continue;
      for (const auto& [w1, f1] : a.coefficients()) {
        const Rational va = value_at(a, w1, *y);
        if (va != 0) out[{g.multiply(w1, tb.word), x}] += va * tb.coef;
      }
    }
  return out;
}

bool matches(const ConvElement& c, const Pointwise& p, int depth) {
  Pointwise mine;
  for (const auto& t : c.terms())
    for (const auto& x : cells_at(c.space(), t.cell, depth)) mine[{t.word, x}] += t.coef;
  Pointwise theirs;
  for (const auto& [k, v] : p)
    if (v != 0) theirs[k] = v;
  return mine == theirs;
}

Word w_of(const Groupoid& g, std::initializer_list<int> signed_gens) {
  Word w;
  for (int s : signed_gens) w.letters.push_back(Letter{s < 0, std::abs(s) - 1});
  return g.reduce(w);
}

struct Case {
  Presentation pres;
  int oracle_depth;
};

std::vector<Case> cases() {
  return {{cuntz(2), 6}, {cuntz(3), 5}, {odometer(3), 6}, {rotation(3), 0},
          {rotation(4, false), 0}, {pair_groupoid(3), 0}};
}

}  // namespace

TEST(Conv, CuntzExamples) {
  const Groupoid g(cuntz(2));
  const auto X = Clopen::whole(g.space());
  const auto u1 = ConvElement::indicator(g, g.generator(0));
  EXPECT_EQ(conv(g, star(g, u1), u1), unit_indicator(X));
  EXPECT_EQ(conv(g, u1, star(g, u1)), unit_indicator(Clopen::cylinders(g.space(), {"1"})));
  // U_{1,2}: 2γ ↦ 1γ carries no unit arrows
  const auto u12 = ConvElement::indicator(g, g.from_word(w_of(g, {1, -2})));
  EXPECT_FALSE(u12.is_zero());
  EXPECT_TRUE(expectation(u12).is_zero());
  EXPECT_EQ(expectation(unit_indicator(X)), Coeffs::indicator(X));
}

TEST(Conv, TermsRoundTrip) {
  const Groupoid g(cuntz(2));
  const auto a = ConvElement::from_terms(g, {{w_of(g, {1}), Cell::cylinder("1"), 2},
                                             {w_of(g, {1}), Cell::cylinder("2"), 2},
                                             {w_of(g, {1, -1}), Cell::cylinder("12"), rational(1, 2)}});
  // u1 u1⁻¹ reduces to the unit word
  ASSERT_EQ(a.coefficients().size(), 2u);
  EXPECT_EQ(a.terms().front(), (ConvTerm{Word{}, Cell::cylinder("12"), rational(1, 2)}));
  EXPECT_EQ(a.terms().back(), (ConvTerm{w_of(g, {1}), Cell::cylinder(""), 2}));
  EXPECT_EQ(ConvElement::from_terms(g, a.terms()), a);
  EXPECT_THROW(ConvElement::from_terms(g, {{w_of(g, {-1}), Cell::cylinder("2"), 1}}), std::invalid_argument);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE(a.scaled(0).is_zero());
}

TEST(Conv, DepthCap) {
  const Groupoid g(cuntz(2));
  auto u = ConvElement::indicator(g, g.generator(0));
  auto p = u;
  for (int i = 0; i < 4; ++i) p = conv(g, p, u);
  EXPECT_EQ(p.depth(), 0);  // a word, not a depth: domain stays X
  const auto deep = unit_indicator(Clopen::cylinders(g.space(), {"1111"}));
  EXPECT_THROW(conv(g, deep, deep, 3), std::length_error);
  EXPECT_NO_THROW(conv(g, deep, deep, 4));
}

TEST(Conv, MatchesPointwiseOracle) {
  std::mt19937_64 rng(11);
  for (const auto& c : cases()) {
    const Groupoid g(c.pres);
    const auto pool = g.enumerate(2).bisections;
    for (int t = 0; t < 60; ++t) {
      const auto a = random_element(g, pool, rng), b = random_element(g, pool, rng);
      ASSERT_TRUE(matches(conv(g, a, b), brute_conv(g, a, b, c.oracle_depth), c.oracle_depth)) << c.pres.name;
    }
  }
}

TEST(Conv, AlgebraLaws) {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (const auto& c : cases()) {
    const Groupoid g(c.pres);
    const auto pool = g.enumerate(2).bisections;
    for (int t = 0; t < 60; ++t) {
      const auto a = random_element(g, pool, rng), b = random_element(g, pool, rng),
                 d = random_element(g, pool, rng);
      ASSERT_EQ(conv(g, conv(g, a, b), d), conv(g, a, conv(g, b, d))) << c.pres.name;
      ASSERT_EQ(star(g, conv(g, a, b)), conv(g, star(g, b), star(g, a)));
      ASSERT_EQ(star(g, star(g, a)), a);
      ASSERT_EQ(conv(g, a, b + d), conv(g, a, b) + conv(g, a, d));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 360);
}

TEST(Conv, ExpectationPositivity) {
  std::mt19937_64 rng(13);
  for (const auto& c : cases()) {
    const Groupoid g(c.pres);
    const auto pool = g.enumerate(2).bisections;
    for (int t = 0; t < 60; ++t) {
      const auto a = random_element(g, pool, rng);
      const auto e = expectation(conv(g, star(g, a), a));
      // Σ over arrows with source x of a(arrow)²
      Coeffs squares(g.space());
      for (const auto& [w, f] : a.coefficients()) squares = squares + f * f;
      ASSERT_EQ(e, squares);
      for (const auto& [cell, v] : e.pieces()) ASSERT_GT(v, 0);
      ASSERT_EQ(e.is_zero(), a.is_zero());
    }
  }
}

TEST(Conv, ConditionalExpectation) {
  std::mt19937_64 rng(14);
  for (const auto& c : cases()) {
    const Groupoid g(c.pres);
    const auto pool = g.enumerate(2).bisections;
    const std::vector<Bisection> units{g.identity(Clopen::whole(g.space()))};
    for (int t = 0; t < 40; ++t) {
      const auto a = random_element(g, pool, rng);
      const auto h1 = random_element(g, units, rng), h2 = random_element(g, units, rng);
      ASSERT_EQ(expectation(conv(g, h1, conv(g, a, h2))), expectation(h1) * expectation(a) * expectation(h2));
      ASSERT_EQ(expectation(h1), *unit_part(h1));
    }
  }
}

TEST(Isometries, CuntzWitness) {
  const Groupoid g(cuntz(2));
  const auto X = Clopen::whole(g.space());
  const ParadoxWitness w{X, 2, 1, {{{g.generator(0), 1}}, {{g.generator(1), 1}}}};
  const auto rep = isometries_from_witness(g, w);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.f, ConvElement::indicator(g, g.generator(0)));
  EXPECT_EQ(rep.g, ConvElement::indicator(g, g.generator(1)));
  EXPECT_EQ(rep.range_sum, unit_indicator(X));

  const auto w1 = cuntz_witness(g, "1", 2);
  const auto r1 = isometries_from_witness(g, w1);
  EXPECT_TRUE(r1.ok());
  EXPECT_EQ(r1.range_sum, unit_indicator(Clopen::cylinders(g.space(), {"1"})));

  auto bad = w;
  bad.rows[1][0].v = g.generator(0);
  EXPECT_THROW(isometries_from_witness(g, bad), std::invalid_argument);
}

TEST(Isometries, StrictDomination) {
  // rows U_{11,ε}, U_{12,ε}: ranges miss 2X
  const Groupoid g(cuntz(2));
  const auto X = Clopen::whole(g.space());
  const ParadoxWitness w{X, 2, 1, {{{g.from_word(w_of(g, {1, 1})), 1}}, {{g.from_word(w_of(g, {1, 2})), 1}}}};
  const auto rep = isometries_from_witness(g, w);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.range_sum, unit_indicator(Clopen::cylinders(g.space(), {"1"})));
  EXPECT_FALSE(dominated(unit_indicator(X), rep.range_sum));
  EXPECT_FALSE(dominated(rep.f, unit_indicator(X)));
}

TEST(Matrix, CuntzWitnesses) {
  const Groupoid g(cuntz(2));
  const auto X = Clopen::whole(g.space());
  const ParadoxWitness w{X, 2, 1, {{{g.generator(0), 1}}, {{g.generator(1), 1}}}};
  const auto rep = matrix_isometries(g, w);
  EXPECT_TRUE(rep.ok());
  const auto one = unit_indicator(X);
  EXPECT_EQ(rep.source_sum, MatConvElement::diagonal(2, 2, one));
  EXPECT_EQ(rep.range_sum, MatConvElement::unit_matrix(2, 0, 0, one));

  const auto w32 = weaken(g, w, 3, 2);
  const auto r32 = matrix_isometries(g, w32);
  EXPECT_TRUE(r32.ok());
  EXPECT_EQ(r32.source_sum, MatConvElement::diagonal(3, 3, one));
  EXPECT_TRUE(dominated(r32.range_sum, MatConvElement::diagonal(3, 2, one)));
  EXPECT_FALSE(dominated(r32.range_sum, MatConvElement::diagonal(3, 1, one)));

  auto empty_row = w;
  empty_row.rows[1].clear();
  EXPECT_THROW(matrix_isometries(g, empty_row), std::invalid_argument);
}

TEST(Matrix, StarAndProduct) {
  const Groupoid g(cuntz(2));
  const auto u1 = ConvElement::indicator(g, g.generator(0));
  const auto e = MatConvElement::unit_matrix(2, 0, 1, u1);
  const auto es = star(g, e);
  EXPECT_EQ(es.at(1, 0), star(g, u1));
  EXPECT_TRUE(es.at(0, 1).is_zero());
  EXPECT_EQ(conv(g, es, e), MatConvElement::unit_matrix(2, 1, 1, unit_indicator(Clopen::whole(g.space()))));
}

TEST(RegularRep, Examples) {
  const Groupoid pair(pair_groupoid(2));
  const RegularRep pi(pair, 0);
  ASSERT_EQ(pi.arrows().size(), 2u);
  EXPECT_FALSE(pi.truncated());
  const auto t = ConvElement::indicator(pair, pair.generator(0)) + ConvElement::indicator(pair, pair.generator(0, true));
  const RationalMatrix swap{{0, 1}, {1, 0}};
  EXPECT_EQ(pi(t), swap);
  EXPECT_EQ(pi(unit_indicator(Clopen::whole(pair.space()))), identity_matrix(2));

  const Groupoid rot(rotation(3));
  const RegularRep pr(rot, 0);
  ASSERT_EQ(pr.arrows().size(), 3u);
  const auto m = pr(ConvElement::indicator(rot, rot.generator(0)));
  EXPECT_EQ(matmul(matmul(m, m), m), identity_matrix(3));
  EXPECT_NE(m, identity_matrix(3));

  const Groupoid free(rotation(3, false));
  const RegularRep pf(free, 0, 4);
  EXPECT_TRUE(pf.truncated());
  EXPECT_THROW(RegularRep(Groupoid(cuntz(2)), 0), std::invalid_argument);
}

TEST(RegularRep, Homomorphism) {
  std::mt19937_64 rng(15);
  for (const auto& p : {pair_groupoid(3), rotation(3), rotation(4), finite_groupoid(4, {{0, 1}, {2, 3}}),
                        trivial_groupoid(2)}) {
    const Groupoid g(p);
    const auto pool = g.enumerate(3).bisections;
    for (int u = 0; u < g.space().size(); ++u) {
      const RegularRep pi(g, u);
      ASSERT_FALSE(pi.truncated());
      for (int t = 0; t < 20; ++t) {
        const auto a = random_element(g, pool, rng), b = random_element(g, pool, rng);
        ASSERT_EQ(pi(conv(g, a, b)), matmul(pi(a), pi(b))) << p.name;
        ASSERT_EQ(expectation(a).at(Cell::at(u)), pi(a)[0][0]);
      }
    }
  }
}

TEST(Trace, Odometer) {
  const Groupoid g(odometer(3));
  const auto cs = build_constraints(g, 3);
  const auto s = solve_state(cs);
  ASSERT_TRUE(s.state);
  const auto tau = trace_from_state(cs, *s.state);
  EXPECT_EQ(tau(unit_indicator(Clopen::whole(g.space()))), 1);
  EXPECT_EQ(tau(ConvElement::indicator(g, g.generator(0))), 0);
  EXPECT_EQ(tau(unit_indicator(Clopen::cylinders(g.space(), {"12"}))), rational(1, 4));
  EXPECT_THROW(tau(unit_indicator(Clopen::cylinders(g.space(), {"1211"}))), std::domain_error);

  // τ(ab) = τ(ba) and faithfulness on words e, a, a⁻¹ with depth-3 coefficients
  std::vector<Bisection> pool;
  for (const auto& b : g.enumerate(1).bisections) pool.push_back(b);
  std::mt19937_64 rng(16);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_element(g, pool, rng, 3, 3), b = random_element(g, pool, rng, 3, 3);
    if (a.depth() > 3 || b.depth() > 3) continue;
    ASSERT_EQ(tau(conv(g, a, b)), tau(conv(g, b, a)));
    ASSERT_EQ(tau(conv(g, star(g, a), a)) == 0, a.is_zero());
  }
  auto bad = *s.state;
  bad.values[0] += 1;
  EXPECT_THROW(trace_from_state(cs, bad), std::invalid_argument);
}

TEST(Trace, Rotation) {
  const Groupoid g(rotation(3));
  const auto cs = build_constraints(g, 0);
  const auto tau = trace_from_state(cs, *solve_state(cs).state);
  const auto r = ConvElement::indicator(g, g.generator(0));
  EXPECT_EQ(tau(conv(g, r, star(g, r))), 1);
  EXPECT_EQ(tau(conv(g, star(g, r), r)), 1);
  EXPECT_EQ(tau(unit_indicator(Clopen::points(g.space(), {0, 1}))), rational(2, 3));
}
