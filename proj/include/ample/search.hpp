#ifndef AMPLE_SEARCH_HPP
#define AMPLE_SEARCH_HPP

// Bounded search for piecewise rearrangements.
//
// Given labeled source clopens S_1..S_a and target clopens T_1..T_b, find
// placements (word w, source cylinder p ⊆ S_i, target label t) such that
// the sources are covered exactly, the images α_w(p) are pairwise disjoint
// inside the targets, and (optionally) the targets are covered exactly.
//
// The search is an exact cover over the atoms (label, depth-D cell) of the
// sources: branch on the uncovered atom with the fewest placements, try
// coarser source cylinders first, then words in shortlex order, then target
// labels. The atom depth D is deepened iteratively from the base depth of the
// inputs. Exhausting the node budget is reported, never treated as a proof.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ample/grpd.hpp"

namespace ample {

template <class T>
struct SearchOutcome {
  std::optional<T> result;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

struct Placement {
  Word word;
  Clopen source;
  int source_label;  // 0-based
  int target_label;  // 0-based
};

struct PackingProblem {
  std::vector<Clopen> sources;
  std::vector<Clopen> targets;
  bool exact_targets = false;
  int depth = 1;       // word length bound
  int max_split = -1;  // extra atom depth beyond the inputs; -1 means `depth`
  std::size_t budget = 200000;
};

namespace detail {

class PackingSearch {
 public:
  PackingSearch(const Groupoid& g, const PackingProblem& prob) : g_(g), prob_(prob) {
    for (const auto& b : g.enumerate(prob.depth).bisections) {
      const auto& p = b.pieces().front();
      words_.push_back({p.word, g.word_map(p.word)});
    }
  }

  SearchOutcome<std::vector<Placement>> run() {
    SearchOutcome<std::vector<Placement>> out;
    const auto& space = g_.space();
    int base = 0;
    for (const auto& c : prob_.sources) base = std::max(base, c.depth());
    for (const auto& c : prob_.targets) base = std::max(base, c.depth());
    const int splits = space.is_finite() ? 0 : (prob_.max_split < 0 ? prob_.depth : prob_.max_split);
    for (int s = 0; s <= splits; ++s) {
      atom_depth_ = base + s;
      build_atoms();
      src_ = prob_.sources;
      tgt_ = prob_.targets;
      chosen_.clear();
      const bool found = dfs();
      out.nodes = nodes_;
      if (found) {
        out.result = chosen_;
        return out;
      }
      if (aborted_) {
        out.budget_exhausted = true;
        return out;
      }
    }
    return out;
  }

 private:
  struct Atom {
    int label;
    Cell cell;
  };
  struct Option {
    Clopen source;
    std::size_t word;
    int target;
    Clopen image;
  };

  void build_atoms() {
    atoms_.clear();
    for (int i = 0; i < static_cast<int>(prob_.sources.size()); ++i) {
      const auto& s = prob_.sources[i];
      if (g_.space().is_finite()) {
        for (const auto& c : s.cells()) atoms_.push_back({i, c});
      } else {
        for (auto& w : s.expand(atom_depth_)) atoms_.push_back({i, Cell::cylinder(std::move(w))});
      }
    }
  }

  // α_w(p) when p ⊆ dom(w).
  const std::optional<Clopen>& image(const Cell& p, std::size_t w) {
    auto key = std::make_pair(p, w);
    auto it = images_.find(key);
    if (it != images_.end()) return it->second;
    const auto& m = words_[w].second;
    const Clopen cp = Clopen::single(g_.space(), p);
    std::optional<Clopen> img;
    if (is_subset(cp, m.domain())) img = m.image(cp);
    return images_.emplace(std::move(key), std::move(img)).first->second;
  }

  std::vector<Cell> ancestors(const Cell& c) const {
    if (g_.space().is_finite()) return {c};
    std::vector<Cell> out;
    for (std::size_t len = 0; len <= c.word.size(); ++len) out.push_back(Cell::cylinder(c.word.substr(0, len)));
    return out;
  }

  std::vector<Option> options(const Atom& a, std::size_t cap) {
    std::vector<Option> out;
    const auto& rem = src_[a.label];
    for (const auto& p : ancestors(a.cell)) {
      if (!rem.contains(p)) continue;
      const Clopen cp = Clopen::single(g_.space(), p);
      for (std::size_t w = 0; w < words_.size(); ++w) {
        const auto& img = image(p, w);
        if (!img) continue;
        for (int t = 0; t < static_cast<int>(tgt_.size()); ++t) {
          if (symmetric_duplicate(t)) continue;
          if (!is_subset(*img, tgt_[t])) continue;
          out.push_back({cp, w, t, *img});
          if (out.size() > cap) return out;
        }
      }
    }
    return out;
  }

  // Untouched identical targets are interchangeable; only the first is tried.
  bool symmetric_duplicate(int t) const {
    if (!(tgt_[t] == prob_.targets[t])) return false;
    for (int u = 0; u < t; ++u)
      if (prob_.targets[u] == prob_.targets[t] && tgt_[u] == prob_.targets[u]) return true;
    return false;
  }

  static std::size_t point_count(const std::vector<Clopen>& cs) {
    std::size_t n = 0;
    for (const auto& c : cs) n += c.cells().size();
    return n;
  }

  bool dfs() {
    if (g_.space().is_finite()) {
      const auto s = point_count(src_), t = point_count(tgt_);
      if (prob_.exact_targets ? s != t : s > t) return false;
    }
    const Atom* best = nullptr;
    std::vector<Option> best_opts;
    std::size_t cap = std::numeric_limits<std::size_t>::max();
    for (const auto& a : atoms_) {
      if (!src_[a.label].contains(a.cell)) continue;
      auto opts = options(a, cap);
      if (!best || opts.size() < best_opts.size()) {
        best = &a;
        best_opts = std::move(opts);
        cap = best_opts.size();
        if (cap == 0) return false;
      }
    }
    if (!best) {
      if (!prob_.exact_targets) return true;
      for (const auto& t : tgt_)
        if (!t.empty()) return false;
      return true;
    }
    for (const auto& o : best_opts) {
      if (++nodes_ > prob_.budget) {
        aborted_ = true;
        return false;
      }
      const Clopen old_src = src_[best->label], old_tgt = tgt_[o.target];
      src_[best->label] = subtract(old_src, o.source);
      tgt_[o.target] = subtract(old_tgt, o.image);
      chosen_.push_back({words_[o.word].first, o.source, best->label, o.target});
      if (dfs()) return true;
      chosen_.pop_back();
      src_[best->label] = old_src;
      tgt_[o.target] = old_tgt;
      if (aborted_) return false;
    }
    return false;
  }

  const Groupoid& g_;
  const PackingProblem& prob_;
  std::vector<std::pair<Word, PartialMap>> words_;
  std::map<std::pair<Cell, std::size_t>, std::optional<Clopen>> images_;
  std::vector<Atom> atoms_;
  int atom_depth_ = 0;
  std::vector<Clopen> src_, tgt_;
  std::vector<Placement> chosen_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

inline SearchOutcome<std::vector<Placement>> solve_packing(const Groupoid& g, const PackingProblem& prob) {
  for (const auto& c : prob.sources) require_same_space(g.space(), c.space());
  for (const auto& c : prob.targets) require_same_space(g.space(), c.space());
  if (prob.depth < 0) throw std::invalid_argument("depth must be nonnegative");
  return detail::PackingSearch(g, prob).run();
}

}  // namespace ample

#endif
