#ifndef AMPLE_STATES_HPP
#define AMPLE_STATES_HPP

// Invariant states at a depth truncation. A state is a probability measure
// on the depth-d cells, invariant under every generator piece that can be
// written at depth d; it is found (or refuted) by the exact simplex.

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/lp.hpp"
#include "ample/paradox.hpp"

namespace ample {

struct ConstraintSystem {
  UnitSpace space;
  int depth = 0;
  std::vector<Cell> cells;  // one variable per cell
  LinearSystem system;      // the last row is the normalization μ(X) = 1
  std::vector<std::string> row_labels;
  std::vector<std::string> skipped;  // generator pieces too deep for `depth`

  bool partial() const { return !skipped.empty(); }
};

struct StateVector {
  UnitSpace space;
  int depth = 0;
  std::vector<Cell> cells;
  std::vector<Rational> values;
  bool partial = false;

  /// μ(A) for A written at depth ≤ `depth`.
  Rational measure(const Clopen& a) const {
    require_same_space(space, a.space());
    if (space.is_shift() && a.depth() > depth)
      throw std::domain_error("clopen " + a.to_string() + " is finer than the state's depth " + std::to_string(depth));
    Rational s;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (a.contains(cells[i])) s += values[i];
    return s;
  }
};

struct FarkasCertificate {
  std::vector<Rational> multipliers;  // one per row of the system
};

namespace detail {

inline std::vector<Cell> depth_cells(const UnitSpace& space, int depth) {
  std::vector<Cell> out;
  if (space.is_finite()) {
    for (int p = 0; p < space.size(); ++p) out.push_back(Cell::at(p));
  } else {
    for (auto& w : all_words(space, depth)) out.push_back(Cell::cylinder(std::move(w)));
  }
  return out;
}

}  // namespace detail

/// μ(α t) = μ(β t) for every generator piece α ↦ β and every t that keeps
/// both sides at depth ≤ d (only the finest such t; coarser ones are sums).
/// Pieces with |α| or |β| > d cannot be written and are skipped.
inline ConstraintSystem build_constraints(const Groupoid& g, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  const auto& space = g.space();
  ConstraintSystem cs{space, depth, detail::depth_cells(space, depth), {}, {}, {}};
  const std::size_t n = cs.cells.size();
  cs.system.vars = n;
  auto add_row = [&](const Clopen& lhs, const Clopen& rhs, std::string label) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (lhs.contains(cs.cells[j])) row[j] += 1;
      if (rhs.contains(cs.cells[j])) row[j] -= 1;
    }
    cs.system.rows.push_back(std::move(row));
    cs.system.rhs.emplace_back(0);
    cs.row_labels.push_back(std::move(label));
  };
  for (int gi = 0; gi < g.generator_count(); ++gi) {
    const auto& m = g.letter_map(Letter{false, gi});
    const std::string name = "g" + std::to_string(gi + 1);
    if (space.is_finite()) {
      for (int p = 0; p < space.size(); ++p) {
        const int t = m.targets()[p];
        if (t < 0) continue;
        add_row(Clopen::points(space, {p}), Clopen::points(space, {t}),
                name + ": " + std::to_string(p) + " -> " + std::to_string(t));
      }
      continue;
    }
    for (const auto& pc : m.pieces()) {
      const int top = static_cast<int>(std::max(pc.src.size(), pc.dst.size()));
      const std::string desc = name + ": \"" + pc.src + "\" -> \"" + pc.dst + "\"";
      if (top > depth) {
        cs.skipped.push_back(desc);
        continue;
      }
      for (const auto& t : all_words(space, depth - top))
        add_row(Clopen::cylinders(space, {pc.src + t}), Clopen::cylinders(space, {pc.dst + t}),
                desc + " on \"" + t + "\"");
    }
  }
  cs.system.rows.emplace_back(n, Rational(1));
  cs.system.rhs.emplace_back(1);
  cs.row_labels.emplace_back("normalization");
  return cs;
}

inline bool verify_state(const ConstraintSystem& cs, const StateVector& s) {
  return s.space == cs.space && s.depth == cs.depth && s.cells == cs.cells && is_feasible_point(cs.system, s.values);
}

inline bool verify_farkas(const ConstraintSystem& cs, const FarkasCertificate& f) {
  return is_farkas_certificate(cs.system, f.multipliers);
}

struct SolveOutcome {
  std::optional<StateVector> state;
  std::optional<FarkasCertificate> farkas;
};

/// A state, or a Farkas certificate that none exists. With `focus`, the state
/// maximizes μ(focus).
inline SolveOutcome solve_state(const ConstraintSystem& cs, const std::optional<Clopen>& focus = std::nullopt) {
  std::optional<std::vector<Rational>> objective;
  if (focus) {
    require_same_space(cs.space, focus->space());
    if (cs.space.is_shift() && focus->depth() > cs.depth)
      throw std::domain_error("clopen " + focus->to_string() + " is finer than depth " + std::to_string(cs.depth));
    objective.emplace(cs.cells.size());
    for (std::size_t j = 0; j < cs.cells.size(); ++j)
      if (focus->contains(cs.cells[j])) (*objective)[j] = 1;
  }
  const auto r = solve_lp(cs.system, objective);
  SolveOutcome out;
  if (r.status == LpStatus::infeasible) {
    out.farkas = FarkasCertificate{r.farkas};
    if (!verify_farkas(cs, *out.farkas)) throw std::logic_error("simplex produced an invalid Farkas certificate");
    return out;
  }
  // the feasible region lies in the probability simplex, so never unbounded
  out.state = StateVector{cs.space, cs.depth, cs.cells, r.x, cs.partial()};
  if (!verify_state(cs, *out.state)) throw std::logic_error("simplex produced an infeasible point");
  return out;
}

inline Rational evaluate(const StateVector& s, const LabeledFamily& f) {
  Rational total;
  for (const auto& c : f.entries()) total += s.measure(c);
  return total;
}

/// The state rescaled so that μ(A) = 1.
inline StateVector normalized_to(const StateVector& s, const Clopen& a) {
  const Rational m = s.measure(a);
  if (m <= 0) throw std::domain_error("state vanishes on the clopen");
  StateVector out = s;
  for (auto& v : out.values) v /= m;
  return out;
}

enum class TarskiOutcome { state, paradox, inconclusive };

inline const char* outcome_name(TarskiOutcome o) {
  switch (o) {
    case TarskiOutcome::state: return "state";
    case TarskiOutcome::paradox: return "paradox";
    case TarskiOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

struct TarskiReport {
  TarskiOutcome outcome = TarskiOutcome::inconclusive;
  int depth = 0;
  std::optional<StateVector> state;  // normalized so that μ(A) = 1
  std::optional<ParadoxWitness> witness;
  std::optional<FarkasCertificate> farkas;
  bool partial = false;
  std::string note;
};

/// Decide at depth d between an invariant state normalized on A and an
/// (n+1, n)-paradoxical decomposition of A, n = 1..max_n. A state of a
/// complete system is reported first; otherwise witnesses are searched with
/// words of length ≤ d, and only then a state of a partial system is given.
inline TarskiReport tarski_report(const Groupoid& g, const Clopen& a, int depth, std::size_t budget, int max_n = 3) {
  if (a.empty()) throw std::invalid_argument("tarski_report needs A nonempty");
  const auto cs = build_constraints(g, depth);
  const auto solved = solve_state(cs, a);
  TarskiReport rep;
  rep.depth = depth;
  rep.partial = cs.partial();
  const bool positive = solved.state && solved.state->measure(a) > 0;
  if (positive && !cs.partial()) {
    rep.outcome = TarskiOutcome::state;
    rep.state = normalized_to(*solved.state, a);
    return rep;
  }
  bool exhausted = false;
  for (int n = 1; n <= max_n; ++n) {
    auto r = search_witness(g, a, n + 1, n, depth, budget);
    exhausted = exhausted || r.budget_exhausted;
    if (r.result) {
      rep.outcome = TarskiOutcome::paradox;
      rep.witness = std::move(r.result);
      return rep;
    }
  }
  if (positive) {
    rep.outcome = TarskiOutcome::state;
    rep.state = normalized_to(*solved.state, a);
    rep.note = "state of the truncated system; generator pieces deeper than the depth were skipped";
    return rep;
  }
  rep.farkas = solved.farkas;
  if (solved.state) rep.note = "state exists but vanishes on A at this depth";
  else rep.note = "no state at this depth and no witness within the search bounds";
  if (exhausted) rep.note += " (witness search hit its budget)";
  return rep;
}

// ---------------------------------------------------------------------------
// Order-unit and almost-unperforation probes

struct MultipleFound {
  int n;
  LeqCertificate cert;  // y ≤ n·x
};

/// Least n ≤ max_n with a certificate y ≤ n·x found at the depth.
inline std::optional<MultipleFound> least_multiple(const Groupoid& g, const LabeledFamily& x, const LabeledFamily& y,
                                                   int depth, int max_n, std::size_t budget) {
  for (int n = 1; n <= max_n; ++n) {
    LabeledFamily nx(g.space());
    for (int i = 0; i < n; ++i) nx = add(nx, x);
    auto r = search_leq(g, y, nx, depth, budget);
    if (r.result) return MultipleFound{n, std::move(*r.result)};
  }
  return std::nullopt;
}

struct OrderUnitSample {
  LabeledFamily x, y;
  std::optional<MultipleFound> found;
};

/// (n+1)x ≤ n·y was certified but x ≤ y was not found within the search
/// bounds. Budget-relative: not a proof that x ≰ y.
struct UnperforationSuspect {
  LabeledFamily x, y;
  int n;
  LeqCertificate cert;
};

struct ProbeReport {
  std::vector<OrderUnitSample> order_unit;
  int unperforation_tests = 0;
  int unperforation_premises = 0;  // samples where (n+1)x ≤ n·y was certified
  std::vector<UnperforationSuspect> suspects;
};

struct ProbeOptions {
  int depth = 2;
  int samples = 20;
  std::uint64_t seed = 0;
  int max_n = 3;
  int cell_depth = 1;  // depth of the sampled clopens
  std::size_t budget = 5000;
};

inline ProbeReport probes(const Groupoid& g, const ProbeOptions& opt) {
  const auto& space = g.space();
  std::mt19937_64 rng(opt.seed);
  const auto cells = detail::depth_cells(space, opt.cell_depth);
  auto sample = [&]() {
    std::vector<Cell> pick;
    while (pick.empty())
      for (const auto& c : cells)
        if (rng() % 2) pick.push_back(c);
    return LabeledFamily::single(Clopen::of(space, pick));
  };
  ProbeReport rep;
  for (int s = 0; s < opt.samples; ++s) {
    const auto x = sample(), y = sample();
    rep.order_unit.push_back({x, y, least_multiple(g, x, y, opt.depth, opt.max_n, opt.budget)});
    const int n = 1 + static_cast<int>(rng() % 2);
    LabeledFamily lhs(space), rhs(space);
    for (int i = 0; i <= n; ++i) lhs = add(lhs, x);
    for (int i = 0; i < n; ++i) rhs = add(rhs, y);
    ++rep.unperforation_tests;
    auto premise = search_leq(g, lhs, rhs, opt.depth, opt.budget);
    if (!premise.result) continue;
    ++rep.unperforation_premises;
    if (!search_leq(g, x, y, opt.depth, opt.budget).result)
      rep.suspects.push_back({x, y, n, std::move(*premise.result)});
  }
  return rep;
}

}  // namespace ample

#endif
