#ifndef AMPLE_PARADOX_HPP
#define AMPLE_PARADOX_HPP

// (k,l)-paradoxical decompositions of a clopen A: k rows of bisections, each
// row covering A by domains, with all ranges tagged into l copies of A and
// pairwise disjoint as tagged sets.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ample/typesg.hpp"

namespace ample {

struct WitnessEntry {
  Bisection v;
  int m;  // copy of A receiving r(v), 1..l

  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

struct ParadoxWitness {
  Clopen a;
  int k = 0, l = 0;
  std::vector<std::vector<WitnessEntry>> rows;

  friend bool operator==(const ParadoxWitness&, const ParadoxWitness&) = default;
};

/// Checks, in order: shape (k > l ≥ 1, k rows, labels in 1..l, valid
/// bisections), the covering clause (each row's domains union to A) and the
/// packing clause (ranges inside A, pairwise disjoint per copy).
inline Verdict verify_witness(const Groupoid& g, const ParadoxWitness& w) {
  const auto& space = g.space();
  if (!(w.a.space() == space)) return Verdict::reject("shape: A lives on a different space");
  if (w.l < 1 || w.k <= w.l) return Verdict::reject("shape: need k > l >= 1");
  if (static_cast<int>(w.rows.size()) != w.k)
    return Verdict::reject("shape: expected " + std::to_string(w.k) + " rows, got " + std::to_string(w.rows.size()));
  for (int i = 0; i < w.k; ++i)
    for (std::size_t j = 0; j < w.rows[i].size(); ++j) {
      const auto& e = w.rows[i][j];
      const std::string where = "row " + std::to_string(i + 1) + " entry " + std::to_string(j + 1) + ": ";
      if (e.m < 1 || e.m > w.l) return Verdict::reject("shape: " + where + "copy label out of range");
      if (auto err = g.check(e.v)) return Verdict::reject("shape: " + where + *err);
    }
  for (int i = 0; i < w.k; ++i) {
    Clopen cover(space);
    for (const auto& e : w.rows[i]) cover = unite(cover, g.dom(e.v));
    if (!(cover == w.a))
      return Verdict::reject("covering: domains of row " + std::to_string(i + 1) +
                             (is_subset(cover, w.a) ? " do not cover A" : " leave A"));
  }
  std::vector<Clopen> used(w.l, Clopen(space));
  for (int i = 0; i < w.k; ++i)
    for (std::size_t j = 0; j < w.rows[i].size(); ++j) {
      const auto& e = w.rows[i][j];
      const auto r = g.ran(e.v);
      const std::string where = "row " + std::to_string(i + 1) + " entry " + std::to_string(j + 1);
      if (!is_subset(r, w.a)) return Verdict::reject("packing: range of " + where + " leaves A");
      if (!disjoint(used[e.m - 1], r))
        return Verdict::reject("packing: range of " + where + " overlaps an earlier range in copy " +
                               std::to_string(e.m));
      used[e.m - 1] = unite(used[e.m - 1], r);
    }
  return Verdict::accept();
}

/// Make the domains within each row pairwise disjoint by cutting away what
/// earlier entries of the row already cover.
inline ParadoxWitness disjointify(const Groupoid& g, const ParadoxWitness& w) {
  ParadoxWitness out{w.a, w.k, w.l, {}};
  for (const auto& row : w.rows) {
    auto& nr = out.rows.emplace_back();
    Clopen seen(g.space());
    for (const auto& e : row) {
      auto v = g.restrict(e.v, subtract(g.dom(e.v), seen));
      seen = unite(seen, g.dom(e.v));
      if (!v.empty()) nr.push_back({std::move(v), e.m});
    }
  }
  return out;
}

/// The certificate k[A] ≤ l[A]: row i, entry j becomes the triple
/// (V_ij, i, m_ij); the uncovered part A ∖ A_p of copy p is the remainder.
inline LeqCertificate witness_to_leq(const Groupoid& g, const ParadoxWitness& w) {
  detail::require(verify_witness(g, w), "witness_to_leq");
  const auto d = disjointify(g, w);
  EquivCertificate cert;
  std::vector<Clopen> hit(w.l, Clopen(g.space()));
  for (int i = 0; i < w.k; ++i)
    for (const auto& e : d.rows[i]) {
      cert.triples.push_back({e.v, i + 1, e.m});
      hit[e.m - 1] = unite(hit[e.m - 1], g.ran(e.v));
    }
  std::vector<Clopen> rest;
  int next = LabeledFamily::multiple(w.a, w.k).size();
  for (int p = 1; p <= w.l; ++p) {
    auto c = subtract(w.a, hit[p - 1]);
    if (c.empty()) continue;
    cert.triples.push_back({g.identity(c), ++next, p});
    rest.push_back(std::move(c));
  }
  return {LabeledFamily::of(g.space(), rest), std::move(cert)};
}

/// Rows are read off the triples leaving the first k labels; the remainder's
/// triples are dropped.
inline ParadoxWitness leq_to_witness(const Groupoid& g, const Clopen& a, int k, int l, const LeqCertificate& c) {
  if (l < 1 || k <= l) throw std::invalid_argument("leq_to_witness needs k > l >= 1");
  if (a.empty()) throw std::invalid_argument("leq_to_witness needs A nonempty");
  detail::require(verify_leq(g, LabeledFamily::multiple(a, k), LabeledFamily::multiple(a, l), c), "leq_to_witness");
  ParadoxWitness w{a, k, l, std::vector<std::vector<WitnessEntry>>(k)};
  for (const auto& t : c.equivalence.triples)
    if (t.from <= k) w.rows[t.from - 1].push_back({t.w, t.to});
  return w;
}

namespace detail {

// Push every entry of `w` (ranges tagged into p.k copies) through the rows of
// `p`, a witness on the same A: an entry landing in copy c is composed with
// each entry of row c of p.
inline ParadoxWitness push_through(const Groupoid& g, const ParadoxWitness& w, const ParadoxWitness& p) {
  ParadoxWitness out{w.a, w.k, p.l, {}};
  for (const auto& row : w.rows) {
    auto& nr = out.rows.emplace_back();
    for (const auto& e : row)
      for (const auto& f : p.rows[e.m - 1]) {
        auto v = g.compose(f.v, e.v);
        if (!v.empty()) nr.push_back({std::move(v), f.m});
      }
  }
  return out;
}

}  // namespace detail

/// A (k',l') witness from a (k,l) witness, for any k' > l' ≥ l: truncate to
/// l+1 rows, pad with identity rows onto fresh copies up to (l'+1, l'), then
/// stack further rows by pushing an identity row through that witness.
inline ParadoxWitness weaken(const Groupoid& g, const ParadoxWitness& w, int k2, int l2) {
  detail::require(verify_witness(g, w), "weaken");
  if (l2 < w.l || k2 <= l2) throw std::invalid_argument("weaken needs k' > l' >= l");
  ParadoxWitness base{w.a, l2 + 1, l2, {w.rows.begin(), w.rows.begin() + w.l + 1}};
  for (int c = w.l + 1; c <= l2; ++c) base.rows.push_back({{g.identity(w.a), c}});
  auto cur = base;
  while (cur.k < k2) {
    // the first l2 + 1 copies of A: rows of cur sit in copies 1..l2, one
    // more row of identities fills copy l2 + 1
    ParadoxWitness wide = cur;
    wide.k += 1;
    wide.l = l2 + 1;
    wide.rows.push_back({{g.identity(w.a), l2 + 1}});
    cur = detail::push_through(g, wide, base);
  }
  detail::require(verify_witness(g, cur), "weaken produced a bad witness");
  return cur;
}

/// S_1, S_2 with d(S_1) = d(S_2) = A and disjoint ranges, from a (2,1)
/// witness whose rows have disjoint domains.
inline std::pair<Bisection, Bisection> merge_to_pseudopair(const Groupoid& g, const ParadoxWitness& w) {
  detail::require(verify_witness(g, w), "merge_to_pseudopair");
  if (w.k != 2 || w.l != 1) throw std::invalid_argument("merge_to_pseudopair needs a (2,1) witness");
  std::vector<Bisection> merged;
  for (const auto& row : w.rows) {
    Bisection s(g.space());
    for (const auto& e : row) {
      if (!disjoint(g.dom(s), g.dom(e.v))) throw std::invalid_argument("row domains overlap; disjointify first");
      s = g.join(s, e.v);
    }
    if (auto err = g.check(s)) throw std::logic_error("merged row is not a bisection: " + *err);
    merged.push_back(std::move(s));
  }
  return {merged[0], merged[1]};
}

/// One entry per arrow piece of S_1 and of S_2.
inline ParadoxWitness split_pseudopair(const Groupoid& g, const Clopen& a, const Bisection& s1, const Bisection& s2) {
  ParadoxWitness w{a, 2, 1, {{}, {}}};
  for (const auto& p : s1.pieces()) w.rows[0].push_back({Bisection(g.space(), {p}), 1});
  for (const auto& p : s2.pieces()) w.rows[1].push_back({Bisection(g.space(), {p}), 1});
  return w;
}

/// Two (k,l) witnesses on disjoint clopens give one on their union.
inline ParadoxWitness merge_blocks(const Groupoid& g, const ParadoxWitness& a, const ParadoxWitness& b) {
  detail::require(verify_witness(g, a), "merge_blocks (first)");
  detail::require(verify_witness(g, b), "merge_blocks (second)");
  if (a.k != b.k || a.l != b.l) throw std::invalid_argument("merge_blocks needs equal (k,l)");
  if (!disjoint(a.a, b.a)) throw std::invalid_argument("merge_blocks needs disjoint clopens");
  ParadoxWitness out{unite(a.a, b.a), a.k, a.l, a.rows};
  for (int i = 0; i < a.k; ++i) out.rows[i].insert(out.rows[i].end(), b.rows[i].begin(), b.rows[i].end());
  return out;
}

/// The witness U_{αi,α} (i = 1..k) for A = αX in cuntz(n), all rows into one copy.
inline ParadoxWitness cuntz_witness(const Groupoid& g, const std::string& alpha, int k) {
  const auto& space = g.space();
  const auto a = Clopen::cylinders(space, {alpha});
  ParadoxWitness w{a, k, 1, {}};
  // U_{αi,α} = (αγ ↦ αiγ): pop α, push i, push α back
  Word pop;
  for (char c : alpha) pop = concat(gen_word(c - '1', true), pop);
  Word push_alpha;
  for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) push_alpha = concat(gen_word(*it - '1'), push_alpha);
  for (int i = 0; i < k; ++i) {
    const Word word = g.reduce(concat(push_alpha, concat(gen_word(i), pop)));
    w.rows.push_back({{Bisection(space, {{word, a}}), 1}});
  }
  return w;
}

/// Bounded search for a (k,l) witness on A, through the packing search for
/// k[A] ≤ l[A].
inline SearchOutcome<ParadoxWitness> search_witness(const Groupoid& g, const Clopen& a, int k, int l, int depth,
                                                    std::size_t budget) {
  if (l < 1 || k <= l) throw std::invalid_argument("search_witness needs k > l >= 1");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  SearchOutcome<ParadoxWitness> out;
  if (a.empty()) throw std::invalid_argument("search_witness needs A nonempty");
  const auto r = search_leq(g, LabeledFamily::multiple(a, k), LabeledFamily::multiple(a, l), depth, budget);
  out.nodes = r.nodes;
  out.budget_exhausted = r.budget_exhausted;
  if (r.result) out.result = leq_to_witness(g, a, k, l, *r.result);
  return out;
}

}  // namespace ample

#endif
