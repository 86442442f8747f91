#ifndef AMPLE_TYPESG_HPP
#define AMPLE_TYPESG_HPP

// Type semigroup: labeled clopen families, equivalence certificates, the
// algebraic preorder and the map from nonnegative integer functions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ample/grpd.hpp"
#include "ample/search.hpp"

namespace ample {

/// ⋃ A_i × {i}. Canonical: no empty entries, labels 1..m, one clopen per label.
class LabeledFamily {
 public:
  explicit LabeledFamily(UnitSpace space) : space_(space) {}

  /// Merge equal labels, drop empty clopens, then renumber the surviving
  /// labels 1..m in order of first appearance.
  static LabeledFamily normalize(const UnitSpace& space, const std::vector<std::pair<Clopen, int>>& entries) {
    std::vector<int> order;
    std::map<int, Clopen> by_label;
    for (const auto& [c, label] : entries) {
      require_same_space(space, c.space());
      if (label < 1) throw std::invalid_argument("labels must be positive");
      if (c.empty()) continue;
      auto it = by_label.find(label);
      if (it == by_label.end()) {
        order.push_back(label);
        by_label.emplace(label, c);
      } else {
        it->second = unite(it->second, c);
      }
    }
    LabeledFamily f(space);
    for (int label : order) f.entries_.push_back(by_label.at(label));
    return f;
  }

  /// Entry i gets label i+1.
  static LabeledFamily of(const UnitSpace& space, const std::vector<Clopen>& by_label) {
    std::vector<std::pair<Clopen, int>> e;
    for (std::size_t i = 0; i < by_label.size(); ++i) e.emplace_back(by_label[i], static_cast<int>(i) + 1);
    return normalize(space, e);
  }

  static LabeledFamily single(const Clopen& a) { return of(a.space(), {a}); }

  /// k[A] = A×{1} ∪ ... ∪ A×{k}.
  static LabeledFamily multiple(const Clopen& a, int k) {
    if (k < 0) throw std::invalid_argument("multiple needs k >= 0");
    return of(a.space(), std::vector<Clopen>(k, a));
  }

  const UnitSpace& space() const { return space_; }
  const std::vector<Clopen>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  /// Clopen at a 1-based label; empty beyond the last label.
  Clopen at(int label) const {
    if (label >= 1 && label <= size()) return entries_[label - 1];
    return Clopen(space_);
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < size(); ++i) {
      if (i) s += ", ";
      s += entries_[i].to_string() + "x{" + std::to_string(i + 1) + "}";
    }
    return s + "]";
  }

  friend bool operator==(const LabeledFamily&, const LabeledFamily&) = default;

 private:
  UnitSpace space_;
  std::vector<Clopen> entries_;
};

/// Labels of the second family shifted past the first.
inline LabeledFamily add(const LabeledFamily& a, const LabeledFamily& b) {
  require_same_space(a.space(), b.space());
  auto e = a.entries();
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return LabeledFamily::of(a.space(), e);
}

struct Triple {
  Bisection w;
  int from;  // label on the domain side
  int to;    // label on the range side

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct EquivCertificate {
  std::vector<Triple> triples;

  friend bool operator==(const EquivCertificate&, const EquivCertificate&) = default;
};

struct LeqCertificate {
  LabeledFamily remainder;
  EquivCertificate equivalence;
};

/// Accept, or reject with the first failure found.
struct Verdict {
  bool ok = true;
  std::string reason;

  static Verdict accept() { return {}; }
  static Verdict reject(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

namespace detail {

inline void grow(std::vector<Clopen>& v, int label, const UnitSpace& space) {
  while (static_cast<int>(v.size()) < label) v.emplace_back(space);
}

}  // namespace detail

inline Verdict verify_equiv(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                            const EquivCertificate& cert) {
  const auto& space = g.space();
  if (!(x.space() == space) || !(y.space() == space)) return Verdict::reject("families live on a different space");
  std::vector<Clopen> doms, rans;
  for (std::size_t k = 0; k < cert.triples.size(); ++k) {
    const auto& t = cert.triples[k];
    const std::string where = "triple " + std::to_string(k + 1) + ": ";
    if (t.from < 1 || t.to < 1) return Verdict::reject(where + "labels must be positive");
    if (!(t.w.space() == space)) return Verdict::reject(where + "bisection on a different space");
    if (auto err = g.check(t.w)) return Verdict::reject(where + *err);
    const auto d = g.dom(t.w), r = g.ran(t.w);
    detail::grow(doms, t.from, space);
    detail::grow(rans, t.to, space);
    if (!disjoint(doms[t.from - 1], d))
      return Verdict::reject(where + "domain overlaps an earlier domain at label " + std::to_string(t.from));
    if (!disjoint(rans[t.to - 1], r))
      return Verdict::reject(where + "range overlaps an earlier range at label " + std::to_string(t.to));
    doms[t.from - 1] = unite(doms[t.from - 1], d);
    rans[t.to - 1] = unite(rans[t.to - 1], r);
  }
  const int nd = std::max<int>(x.size(), doms.size()), nr = std::max<int>(y.size(), rans.size());
  detail::grow(doms, nd, space);
  detail::grow(rans, nr, space);
  for (int i = 1; i <= nd; ++i)
    if (!(doms[i - 1] == x.at(i)))
      return Verdict::reject("domains do not reproduce the first family at label " + std::to_string(i));
  for (int i = 1; i <= nr; ++i)
    if (!(rans[i - 1] == y.at(i)))
      return Verdict::reject("ranges do not reproduce the second family at label " + std::to_string(i));
  return Verdict::accept();
}

inline Verdict verify_leq(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                          const LeqCertificate& cert) {
  auto v = verify_equiv(g, add(x, cert.remainder), y, cert.equivalence);
  if (!v) v.reason = "x + remainder is not certified equivalent to y: " + v.reason;
  return v;
}

namespace detail {

inline void require(const Verdict& v, const char* what) {
  if (!v) throw std::invalid_argument(std::string(what) + ": " + v.reason);
}

// Identity triples with equal labels are joined into one; their domains are
// disjoint already, so the join is again a bisection.
inline EquivCertificate tidy(const Groupoid& g, std::vector<Triple> triples) {
  std::map<std::pair<int, int>, Bisection> ids;
  EquivCertificate out;
  for (auto& t : triples) {
    if (t.w.empty()) continue;
    const bool unit = t.w.pieces().size() == 1 && t.w.pieces()[0].word.empty();
    if (!unit) {
      out.triples.push_back(std::move(t));
      continue;
    }
    auto key = std::make_pair(t.from, t.to);
    auto it = ids.find(key);
    if (it == ids.end()) ids.emplace(key, t.w);
    else it->second = g.join(it->second, t.w);
  }
  for (auto& [key, w] : ids) out.triples.push_back({w, key.first, key.second});
  std::stable_sort(out.triples.begin(), out.triples.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  return out;
}

}  // namespace detail

inline EquivCertificate reflexive(const Groupoid& g, const LabeledFamily& x) {
  EquivCertificate c;
  for (int i = 1; i <= x.size(); ++i) c.triples.push_back({g.identity(x.at(i)), i, i});
  return c;
}

inline EquivCertificate symmetric(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                                  const EquivCertificate& c) {
  detail::require(verify_equiv(g, x, y, c), "symmetric");
  EquivCertificate out;
  for (const auto& t : c.triples) out.triples.push_back({g.inverse(t.w), t.to, t.from});
  return out;
}

/// x ∼ y via c1 and y ∼ z via c2. Over each middle label the ranges of c1 and
/// the domains of c2 are two partitions of the same clopen; composing every
/// matched pair restricts both to their common refinement.
inline EquivCertificate transitive(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                                   const LabeledFamily& z, const EquivCertificate& c1, const EquivCertificate& c2) {
  detail::require(verify_equiv(g, x, y, c1), "transitive (first)");
  detail::require(verify_equiv(g, y, z, c2), "transitive (second)");
  std::vector<Triple> out;
  for (const auto& a : c1.triples)
    for (const auto& b : c2.triples) {
      if (a.to != b.from) continue;
      auto w = g.compose(b.w, a.w);
      if (!w.empty()) out.push_back({std::move(w), a.from, b.to});
    }
  return detail::tidy(g, std::move(out));
}

/// From x1 ∼ y1 and x2 ∼ y2, a certificate for x1 + x2 ∼ y1 + y2.
inline EquivCertificate sum(const Groupoid& g, const LabeledFamily& x1, const LabeledFamily& y1,
                            const EquivCertificate& c1, const LabeledFamily& x2, const LabeledFamily& y2,
                            const EquivCertificate& c2) {
  detail::require(verify_equiv(g, x1, y1, c1), "sum (first)");
  detail::require(verify_equiv(g, x2, y2, c2), "sum (second)");
  EquivCertificate out = c1;
  for (const auto& t : c2.triples) out.triples.push_back({t.w, t.from + x1.size(), t.to + y1.size()});
  return out;
}

/// [A] ≤ [B] for A ⊆ B, with remainder [B∖A].
inline LeqCertificate subset_cert(const Groupoid& g, const Clopen& a, const Clopen& b) {
  if (!is_subset(a, b)) throw std::invalid_argument("subset_cert needs A ⊆ B");
  const auto rest = subtract(b, a);
  const auto x = LabeledFamily::single(a);
  LeqCertificate c{LabeledFamily::single(rest), {}};
  if (!a.empty()) c.equivalence.triples.push_back({g.identity(a), 1, 1});
  if (!rest.empty()) c.equivalence.triples.push_back({g.identity(rest), x.size() + 1, 1});
  return c;
}

/// Turn placements from the packing search into a certificate, one triple per
/// (source label, target label, word).
inline EquivCertificate triples_from(const Groupoid& g, const std::vector<Placement>& ps) {
  std::map<std::tuple<int, int, Word>, Clopen> grouped;
  for (const auto& p : ps) {
    auto key = std::make_tuple(p.source_label + 1, p.target_label + 1, p.word);
    auto it = grouped.find(key);
    if (it == grouped.end()) grouped.emplace(key, p.source);
    else it->second = unite(it->second, p.source);
  }
  EquivCertificate c;
  for (const auto& [key, dom] : grouped)
    c.triples.push_back({Bisection(g.space(), {{std::get<2>(key), dom}}), std::get<0>(key), std::get<1>(key)});
  return c;
}

/// Bounded search for x ∼ y. An empty result means nothing was found within
/// the depth and budget; it says nothing about inequivalence.
inline SearchOutcome<EquivCertificate> search_equiv(const Groupoid& g, const LabeledFamily& x,
                                                    const LabeledFamily& y, int depth, std::size_t budget) {
  SearchOutcome<EquivCertificate> out;
  if (x == y) {
    out.result = reflexive(g, x);
    return out;
  }
  PackingProblem prob{x.entries(), y.entries(), true, depth, -1, budget};
  const auto r = solve_packing(g, prob);
  out.nodes = r.nodes;
  out.budget_exhausted = r.budget_exhausted;
  if (r.result) {
    out.result = triples_from(g, *r.result);
    detail::require(verify_equiv(g, x, y, *out.result), "search_equiv produced a bad certificate");
  }
  return out;
}

/// Bounded search for x ≤ y: pack x into y, the uncovered part of each label
/// of y becomes the remainder.
inline SearchOutcome<LeqCertificate> search_leq(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                                                int depth, std::size_t budget) {
  SearchOutcome<LeqCertificate> out;
  PackingProblem prob{x.entries(), y.entries(), false, depth, -1, budget};
  const auto r = solve_packing(g, prob);
  out.nodes = r.nodes;
  out.budget_exhausted = r.budget_exhausted;
  if (!r.result) return out;
  auto cert = triples_from(g, *r.result);
  std::vector<Clopen> covered(y.size(), Clopen(g.space()));
  for (const auto& t : cert.triples) covered[t.to - 1] = unite(covered[t.to - 1], g.ran(t.w));
  std::vector<Clopen> rest;
  std::vector<int> rest_target;
  for (int i = 1; i <= y.size(); ++i) {
    auto c = subtract(y.at(i), covered[i - 1]);
    if (c.empty()) continue;
    rest.push_back(c);
    rest_target.push_back(i);
  }
  for (std::size_t j = 0; j < rest.size(); ++j)
    cert.triples.push_back({g.identity(rest[j]), x.size() + static_cast<int>(j) + 1, rest_target[j]});
  out.result = LeqCertificate{LabeledFamily::of(g.space(), rest), std::move(cert)};
  detail::require(verify_leq(g, x, y, *out.result), "search_leq produced a bad certificate");
  return out;
}

/// Chain x ≤ y (c1) and y ≤ z (c2): z ∼ y + r2 ∼ x + r1 + r2.
inline LeqCertificate leq_transitive(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                                     const LabeledFamily& z, const LeqCertificate& c1, const LeqCertificate& c2) {
  detail::require(verify_leq(g, x, y, c1), "leq_transitive (first)");
  detail::require(verify_leq(g, y, z, c2), "leq_transitive (second)");
  const auto xr1 = add(x, c1.remainder);
  // (x + r1) + r2 ∼ y + r2 ∼ z, and (x + r1) + r2 = x + (r1 + r2) as families
  const auto step = sum(g, xr1, y, c1.equivalence, c2.remainder, c2.remainder, reflexive(g, c2.remainder));
  const auto rem = add(c1.remainder, c2.remainder);
  auto cert = transitive(g, add(xr1, c2.remainder), add(y, c2.remainder), z, step, c2.equivalence);
  return LeqCertificate{rem, std::move(cert)};
}

// ---------------------------------------------------------------------------
// Integer-valued functions and ρ

using IntFunction = LocallyConstant<std::int64_t>;

/// Σ 1_{A_i}.
inline IntFunction int_function(const UnitSpace& space, const std::vector<Clopen>& parts) {
  IntFunction f(space);
  for (const auto& a : parts) f = f + IntFunction::indicator(a);
  return f;
}

/// The level sets {f ≥ i} for i = 1..max f.
inline std::vector<Clopen> level_decomposition(const IntFunction& f) {
  std::int64_t top = 0;
  for (const auto& [c, v] : f.pieces()) {
    if (v < 0) throw std::invalid_argument("function takes negative values");
    top = std::max(top, v);
  }
  std::vector<Clopen> out;
  for (std::int64_t i = 1; i <= top; ++i) {
    std::vector<Cell> cells;
    for (const auto& [c, v] : f.pieces())
      if (v >= i) cells.push_back(c);
    out.push_back(Clopen::of(f.space(), cells));
  }
  return out;
}

inline LabeledFamily rho(const IntFunction& f) { return LabeledFamily::of(f.space(), level_decomposition(f)); }

/// The family of a decomposition f = Σ 1_{A_i}.
inline LabeledFamily family_of(const UnitSpace& space, const std::vector<Clopen>& parts) {
  return LabeledFamily::of(space, parts);
}

namespace detail {

// Label of entry i of a decomposition inside family_of (empty entries vanish).
inline std::vector<int> compressed_labels(const std::vector<Clopen>& parts) {
  std::vector<int> out;
  int next = 0;
  for (const auto& a : parts) out.push_back(a.empty() ? 0 : ++next);
  return out;
}

// Certificate from family_of(parts) to the stacked refinement family in which
// label t holds every cell covered at least t times.
inline EquivCertificate to_stack(const Groupoid& g, const std::vector<Cell>& cells,
                                 const std::vector<std::vector<std::size_t>>& cover,
                                 const std::vector<Clopen>& parts) {
  const auto labels = compressed_labels(parts);
  std::vector<int> height(cells.size(), 0);
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (auto j : cover[i]) {
      const int t = ++height[j];
      triples.push_back({g.identity(Clopen::single(g.space(), cells[j])), labels[i], t});
    }
  return tidy(g, std::move(triples));
}

}  // namespace detail

/// For two decompositions of the same function, a certificate
/// family_of(first) ∼ family_of(second) through the common refinement: each
/// refinement cell is stacked once per part containing it.
inline EquivCertificate rho_welldef_cert(const Groupoid& g, const std::vector<Clopen>& first,
                                         const std::vector<Clopen>& second) {
  const auto& space = g.space();
  if (!(int_function(space, first) == int_function(space, second)))
    throw std::invalid_argument("decompositions sum to different functions");
  const auto ref = common_refinement(space, {first, second});
  const auto c1 = detail::to_stack(g, ref.cells, ref.cover[0], first);
  const auto c2 = detail::to_stack(g, ref.cells, ref.cover[1], second);
  std::vector<Clopen> stack;
  for (const auto& t : c1.triples) {
    detail::grow(stack, t.to, space);
    stack[t.to - 1] = unite(stack[t.to - 1], g.dom(t.w));
  }
  const auto mid = LabeledFamily::of(space, stack);
  const auto x = family_of(space, first), y = family_of(space, second);
  return transitive(g, x, mid, y, c1, symmetric(g, y, mid, c2));
}

/// A certificate ρ(f+h) ∼ ρ(f) + ρ(h).
inline EquivCertificate rho_additivity_cert(const Groupoid& g, const IntFunction& f, const IntFunction& h) {
  auto both = level_decomposition(f);
  const auto lh = level_decomposition(h);
  both.insert(both.end(), lh.begin(), lh.end());
  return rho_welldef_cert(g, level_decomposition(f + h), both);
}

/// f∘α_S, defined for supp(f) ⊆ r(S).
inline IntFunction pullback(const Groupoid& g, const Bisection& s, const IntFunction& f) {
  if (!is_subset(f.support(), g.ran(s))) throw std::invalid_argument("pullback needs supp(f) within r(S)");
  const auto back = g.inverse(s);
  IntFunction out(g.space());
  for (const auto& [c, v] : f.pieces())
    out = out + IntFunction::indicator(g.apply(back, Clopen::single(g.space(), c)), v);
  return out;
}

/// For parts A_i ⊆ r(S): family_of(A) ∼ family_of(α_S^{-1}(A_i)) through the
/// restrictions S_i of S with range A_i.
inline EquivCertificate rho_invariance_cert(const Groupoid& g, const Bisection& s, const std::vector<Clopen>& parts) {
  const auto back = g.inverse(s);
  const auto labels = detail::compressed_labels(parts);
  EquivCertificate c;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) continue;
    if (!is_subset(parts[i], g.ran(s))) throw std::invalid_argument("parts must lie in r(S)");
    c.triples.push_back({g.restrict(back, parts[i]), labels[i], labels[i]});
  }
  return c;
}

inline std::vector<Clopen> pull_parts(const Groupoid& g, const Bisection& s, const std::vector<Clopen>& parts) {
  const auto back = g.inverse(s);
  std::vector<Clopen> out;
  for (const auto& a : parts) out.push_back(g.apply(back, a));
  return out;
}

}  // namespace ample

#endif
