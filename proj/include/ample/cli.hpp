#ifndef AMPLE_CLI_HPP
#define AMPLE_CLI_HPP

// The `ample` command line: argument parsing into a RunConfig and dispatch to
// the library. Exit codes: 0 verified/found, 1 rejected/refuted,
// 2 inconclusive within the budget, 3 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "ample/io.hpp"

namespace ample::cli {

using io::json;

enum ExitCode : int { verified = 0, rejected = 1, inconclusive = 2, input_error = 3 };

inline constexpr const char* budget_env = "AMPLE_BUDGET";
inline constexpr std::size_t fallback_budget = 200000;
inline constexpr int max_k = 4, max_l = 3, max_search_depth = 4, max_state_depth = 8;

/// AMPLE_BUDGET if it holds a positive integer, otherwise the fallback.
inline std::size_t default_budget() {
  const char* v = std::getenv(budget_env);
  if (!v || !*v) return fallback_budget;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  return (*end == '\0' && n > 0) ? static_cast<std::size_t>(n) : fallback_budget;
}

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;  // presentation first, then a certificate where needed
  int depth = 1;
  std::size_t budget = default_budget();
  int k = 2, l = 1;
  std::uint64_t seed = 0;
  std::string set;  // empty: whole space (or no focus for `state`)
  std::string x, y;
  bool leq = false;
  int samples = 20;
  int max_n = 3;
  std::string out;  // certificate path; empty embeds it in the report
  bool human = false;
};

struct Result {
  int code = verified;
  json report = json::object();
  std::string summary;
};

// ---------------------------------------------------------------------------
// Argument syntax for sets and families

namespace detail {

inline bool is_json_path(const std::string& s) { return s.size() > 5 && s.ends_with(".json"); }

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

/// "whole", "none", or comma-separated cells: words on shift spaces
/// ("e" is the empty word), points on finite ones. A .json path holds a clopen.
inline Clopen parse_set(const std::string& spec, const UnitSpace& space, const std::string& flag) {
  if (spec.empty() || spec == "whole") return Clopen::whole(space);
  if (spec == "none") return Clopen(space);
  if (is_json_path(spec)) return io::load(spec).read([&](const json& j) { return io::read_clopen(j, "", space); });
  std::vector<Cell> cells;
  for (const auto& tok : split(spec, ',')) {
    if (space.is_finite()) {
      if (!io::detail::digits(tok) || tok.size() > 6) throw io::InputError(flag, "expected point indices, got \"" + tok + "\"");
      const int p = std::stoi(tok);
      if (p >= space.size()) throw io::InputError(flag, "point " + tok + " out of range for " + space.describe());
      cells.push_back(Cell::at(p));
    } else {
      const std::string w = tok == "e" ? "" : tok;
      if (tok.empty() || !space.valid_word(w))
        throw io::InputError(flag, "expected words over " + space.describe() + ", got \"" + tok + "\"");
      cells.push_back(Cell::cylinder(w));
    }
  }
  return Clopen::of(space, cells);
}

/// Label sets separated by ';' (label i is the i-th set), or a .json family.
inline LabeledFamily parse_family(const std::string& spec, const UnitSpace& space, const std::string& flag) {
  if (spec.empty()) throw io::InputError(flag, "a family is required");
  if (is_json_path(spec)) return io::load(spec).read([&](const json& j) { return io::read_family(j, "", space); });
  std::vector<Clopen> parts;
  for (const auto& part : split(spec, ';')) parts.push_back(parse_set(part, space, flag));
  return LabeledFamily::of(space, parts);
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io::InputError("--out", "cannot write " + path);
  f << io::dump(j);
}

/// Write the certificate to --out, or embed it in the report.
inline void emit(const RunConfig& cfg, Result& r, const json& cert) {
  if (cfg.out.empty()) {
    r.report["certificate"] = cert;
  } else {
    write_file(cfg.out, cert);
    r.report["certificate_path"] = cfg.out;
  }
}

inline void need_inputs(const RunConfig& cfg, std::size_t n, const char* usage) {
  if (cfg.inputs.size() != n) throw io::InputError("", std::string("usage: ample ") + cfg.subcommand + " " + usage);
}

inline void check_depth(int depth, int cap) {
  if (depth < 0 || depth > cap)
    throw io::InputError("--depth", "depth must lie in 0.." + std::to_string(cap));
}

inline json state_values(const StateVector& s) {
  json out = json::object();
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const auto& c = s.cells[i];
    out[c.point >= 0 ? std::to_string(c.point) : (c.word.empty() ? "e" : c.word)] = to_string(s.values[i]);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands

namespace commands {

using detail::emit;
using detail::need_inputs;

inline Result verify_witness(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 2, "<presentation> <witness.json>");
  const auto w = io::load(cfg.inputs[1]).read([&](const json& j) { return io::read_witness(j, g); });
  const auto v = ample::verify_witness(g, w);
  Result r;
  r.code = v ? verified : rejected;
  r.report = {{"verdict", v ? "verified" : "rejected"}, {"k", w.k}, {"l", w.l}};
  if (!v) r.report["reason"] = v.reason;
  r.summary = v ? "witness verified: (" + std::to_string(w.k) + "," + std::to_string(w.l) + ")-paradoxical decomposition of " + w.a.to_string()
                : "witness rejected, " + v.reason;
  return r;
}

inline Result find_witness(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 1, "<presentation> --set S --k K --l L --depth D");
  detail::check_depth(cfg.depth, max_search_depth);
  if (cfg.l < 1 || cfg.k <= cfg.l) throw io::InputError("--k", "need k > l >= 1");
  if (cfg.k > max_k || cfg.l > max_l)
    throw io::InputError("--k", "caps are k <= " + std::to_string(max_k) + ", l <= " + std::to_string(max_l));
  const auto a = detail::parse_set(cfg.set, g.space(), "--set");
  if (a.empty()) throw io::InputError("--set", "the set must be nonempty");
  const auto s = search_witness(g, a, cfg.k, cfg.l, cfg.depth, cfg.budget);
  Result r;
  r.report = {{"A", io::write(a)}, {"k", cfg.k}, {"l", cfg.l}, {"depth", cfg.depth}, {"nodes", s.nodes},
              {"budget_exhausted", s.budget_exhausted}};
  if (s.result) {
    r.report["outcome"] = "found";
    emit(cfg, r, io::write(*s.result));
    r.summary = "found a (" + std::to_string(cfg.k) + "," + std::to_string(cfg.l) + ") witness for " + a.to_string() +
                " at depth " + std::to_string(cfg.depth);
  } else {
    r.code = inconclusive;
    r.report["outcome"] = "none-within-budget";
    r.summary = "no witness within depth " + std::to_string(cfg.depth) + " and budget " + std::to_string(cfg.budget) +
                " (this is not a proof that none exists)";
  }
  return r;
}

inline Result type_eq(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 1, "<presentation> --x FAMILY --y FAMILY [--leq] --depth D");
  detail::check_depth(cfg.depth, max_search_depth);
  const auto x = detail::parse_family(cfg.x, g.space(), "--x");
  const auto y = detail::parse_family(cfg.y, g.space(), "--y");
  Result r;
  r.report = {{"relation", cfg.leq ? "leq" : "equiv"}, {"x", io::write(x)}, {"y", io::write(y)}, {"depth", cfg.depth}};
  const std::string rel = x.to_string() + (cfg.leq ? " <= " : " ~ ") + y.to_string();
  std::optional<json> cert;
  if (cfg.leq) {
    auto s = search_leq(g, x, y, cfg.depth, cfg.budget);
    r.report["nodes"] = s.nodes;
    if (s.result) cert = io::write_leq(x, y, *s.result);
  } else {
    auto s = search_equiv(g, x, y, cfg.depth, cfg.budget);
    r.report["nodes"] = s.nodes;
    if (s.result) cert = io::write_equiv(x, y, *s.result);
  }
  if (cert) {
    r.report["outcome"] = "found";
    emit(cfg, r, *cert);
    r.summary = "certificate found for " + rel;
  } else {
    r.code = inconclusive;
    r.report["outcome"] = "none-within-budget";
    r.summary = "no certificate for " + rel + " within the search bounds";
  }
  return r;
}

inline Result verify_cert(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 2, "<presentation> <certificate.json>");
  const auto doc = io::load(cfg.inputs[1]);
  const auto tag = doc.read([](const json& j) { return io::detail::text(io::detail::field(j, "", "schema"), "/schema"); });
  Verdict v;
  std::string what;
  if (tag == io::schema::equiv) {
    const auto f = doc.read([&](const json& j) { return io::read_equiv(j, g); });
    v = verify_equiv(g, f.x, f.y, f.cert);
    what = "equivalence " + f.x.to_string() + " ~ " + f.y.to_string();
  } else if (tag == io::schema::leq) {
    const auto f = doc.read([&](const json& j) { return io::read_leq(j, g); });
    v = verify_leq(g, f.x, f.y, f.cert);
    what = "inequality " + f.x.to_string() + " <= " + f.y.to_string();
  } else if (tag == io::schema::witness) {
    const auto w = doc.read([&](const json& j) { return io::read_witness(j, g); });
    v = ample::verify_witness(g, w);
    what = "paradoxical decomposition";
  } else if (tag == io::schema::state) {
    const auto s = doc.read([&](const json& j) { return io::read_state(j, g.space()); });
    detail::check_depth(s.depth, max_state_depth);
    const auto cs = build_constraints(g, s.depth);
    v = verify_state(cs, s) ? Verdict::accept() : Verdict::reject("state violates the depth-" + std::to_string(s.depth) + " constraints");
    if (v && s.partial != cs.partial()) v = Verdict::reject("partial flag does not match the constraint system");
    what = "state at depth " + std::to_string(s.depth);
  } else if (tag == io::schema::farkas) {
    const auto depth = doc.read([](const json& j) { return io::detail::integer(io::detail::field(j, "", "depth"), "/depth"); });
    detail::check_depth(depth, max_state_depth);
    const auto f = doc.read([](const json& j) { return io::read_farkas(j); });
    const auto cs = build_constraints(g, depth);
    if (f.multipliers.size() != cs.system.rows.size())
      v = Verdict::reject("expected " + std::to_string(cs.system.rows.size()) + " multipliers");
    else if (!verify_farkas(cs, f))
      v = Verdict::reject("multipliers do not certify infeasibility");
    what = "infeasibility certificate at depth " + std::to_string(depth);
  } else {
    throw io::InputError("/schema", "unknown certificate schema \"" + tag + "\"").at_line(
        io::LineIndex(doc.text).line("/schema"), doc.source);
  }
  Result r;
  r.code = v ? verified : rejected;
  r.report = {{"schema", tag}, {"verdict", v ? "verified" : "rejected"}};
  if (!v) r.report["reason"] = v.reason;
  r.summary = what + (v ? " verified" : " rejected, " + v.reason);
  return r;
}

inline Result state(const RunConfig& cfg, const Groupoid& g, const std::string& pres) {
  need_inputs(cfg, 1, "<presentation> --depth D [--set FOCUS]");
  detail::check_depth(cfg.depth, max_state_depth);
  std::optional<Clopen> focus;
  if (!cfg.set.empty()) focus = detail::parse_set(cfg.set, g.space(), "--set");
  const auto cs = build_constraints(g, cfg.depth);
  const auto s = solve_state(cs, focus);
  Result r;
  r.report = {{"depth", cfg.depth}, {"partial", cs.partial()}, {"skipped", cs.skipped}};
  if (s.state) {
    r.report["outcome"] = "state";
    r.report["values"] = detail::state_values(*s.state);
    if (focus) r.report["focus_measure"] = to_string(s.state->measure(*focus));
    emit(cfg, r, io::write(*s.state, pres));
    std::string vals;
    for (const auto& v : s.state->values) vals += (vals.empty() ? "" : ", ") + to_string(v);
    r.summary = std::string(cs.partial() ? "state of the truncated system" : "invariant state") + " at depth " +
                std::to_string(cfg.depth) + ": (" + vals + ")";
  } else {
    r.code = rejected;
    r.report["outcome"] = "no-state";
    emit(cfg, r, io::write(*s.farkas, cs, pres));
    r.summary = "no invariant state at depth " + std::to_string(cfg.depth) + "; Farkas certificate emitted";
  }
  return r;
}

inline json tarski_json(const TarskiReport& t, const ConstraintSystem& cs, const std::string& pres) {
  json out = {{"outcome", outcome_name(t.outcome)}, {"depth", t.depth}, {"partial", t.partial}};
  if (!t.note.empty()) out["note"] = t.note;
  if (t.state) {
    out["state"] = io::write(*t.state, pres);
    out["values"] = detail::state_values(*t.state);
  }
  if (t.witness) out["witness"] = io::write(*t.witness);
  if (t.farkas) out["farkas"] = io::write(*t.farkas, cs, pres);
  return out;
}

inline Result tarski(const RunConfig& cfg, const Groupoid& g, const std::string& pres) {
  need_inputs(cfg, 1, "<presentation> --set A --depth D");
  detail::check_depth(cfg.depth, max_search_depth);
  const auto a = detail::parse_set(cfg.set, g.space(), "--set");
  if (a.empty()) throw io::InputError("--set", "the set must be nonempty");
  const auto t = tarski_report(g, a, cfg.depth, cfg.budget, cfg.max_n);
  Result r;
  r.report = tarski_json(t, build_constraints(g, cfg.depth), pres);
  r.report["A"] = io::write(a);
  r.code = t.outcome == TarskiOutcome::inconclusive ? inconclusive : verified;
  switch (t.outcome) {
    case TarskiOutcome::state: r.summary = "invariant state with mu(A) = 1 at depth " + std::to_string(t.depth); break;
    case TarskiOutcome::paradox:
      r.summary = "A is (" + std::to_string(t.witness->k) + "," + std::to_string(t.witness->l) + ")-paradoxical";
      break;
    case TarskiOutcome::inconclusive: r.summary = "inconclusive at depth " + std::to_string(t.depth); break;
  }
  if (!t.note.empty()) r.summary += " (" + t.note + ")";
  return r;
}

inline Result dichotomy(const RunConfig& cfg, const Groupoid& g, const std::string& pres) {
  need_inputs(cfg, 1, "<presentation> --depth D");
  detail::check_depth(cfg.depth, max_search_depth);
  const auto whole = Clopen::whole(g.space());
  const auto t = tarski_report(g, whole, cfg.depth, cfg.budget, cfg.max_n);
  const bool minimal = g.is_minimal(cfg.depth) == Minimality::yes;
  Result r;
  r.report = tarski_json(t, build_constraints(g, cfg.depth), pres);
  r.report["minimal"] = minimal ? "yes" : "unknown";
  std::string side = "undecided";
  if (t.outcome == TarskiOutcome::paradox) side = "paradoxical";
  if (t.outcome == TarskiOutcome::state) side = "invariant-state";
  r.report["side"] = side;
  r.code = t.outcome == TarskiOutcome::inconclusive ? inconclusive : verified;
  if (side == "paradoxical")
    r.summary = "the unit space is paradoxical (purely infinite side)";
  else if (side == "invariant-state")
    r.summary = "an invariant state exists at depth " + std::to_string(cfg.depth) + " (stably finite side)";
  else
    r.summary = "neither side settled at depth " + std::to_string(cfg.depth);
  if (!t.note.empty()) r.summary += " (" + t.note + ")";
  r.summary += minimal ? "; the groupoid is minimal" : "; minimality not established at this depth";
  return r;
}

inline Result orbits(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 1, "<presentation>");
  const auto part = ample::orbits(g);
  const auto lat = invariant_lattice(g);
  json blocks = json::array(), members = json::array();
  for (const auto& b : part.blocks) blocks.push_back(b);
  for (auto m : lat.members) members.push_back(set_to_string(m, lat.points));
  Result r;
  r.report = {{"points", part.points}, {"orbits", blocks}, {"quasi_orbits", blocks},
              {"invariant_subsets", members}, {"lattice_size", lat.members.size()}};
  r.summary = std::to_string(part.blocks.size()) + " orbit(s), " + std::to_string(lat.members.size()) + " invariant subsets";
  return r;
}

inline Result ideal_check(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 1, "<presentation>");
  const auto rep = ideal_lattice_check(g, cfg.seed);
  Result r;
  if (rep.refused) {
    r.code = inconclusive;
    r.report = {{"outcome", "refused"}, {"reason", rep.reason}};
    r.summary = "refused: " + rep.reason;
    return r;
  }
  json table = json::array();
  for (auto [u, theta] : rep.table)
    table.push_back({{"U", set_to_string(u, rep.points)}, {"theta_xi_U", set_to_string(theta, rep.points)}});
  r.report = {{"outcome", rep.ok() ? "pass" : "fail"},
              {"points", rep.points},
              {"orbits", rep.orbit_count},
              {"dimension", rep.dimension},
              {"invariant_subsets", rep.invariant_subsets},
              {"ideals", rep.ideals},
              {"table", table},
              {"checks",
               {{"associative", rep.associative},
                {"matrix_units", rep.matrix_units},
                {"ideals_are_blocks", rep.ideals_are_blocks},
                {"xi_ideals", rep.xi_ideals},
                {"theta_xi_identity", rep.theta_xi_identity},
                {"theta_bijective", rep.theta_bijective},
                {"theta_monotone", rep.theta_monotone},
                {"theta_meets", rep.theta_meets},
                {"primes_match_quasi_orbits", rep.primes_match_quasi_orbits}}}};
  r.code = rep.ok() ? verified : rejected;
  r.summary = std::to_string(rep.ideals) + " ideals, " + std::to_string(rep.invariant_subsets) + " invariant subsets: " +
              (rep.ok() ? "correspondence verified" : "correspondence FAILED");
  return r;
}

inline Result isometries(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 2, "<presentation> <witness.json>");
  const auto w = io::load(cfg.inputs[1]).read([&](const json& j) { return io::read_witness(j, g); });
  Result r;
  if (auto v = ample::verify_witness(g, w); !v) {
    r.code = rejected;
    r.report = {{"outcome", "rejected"}, {"reason", v.reason}};
    r.summary = "witness rejected, " + v.reason;
    return r;
  }
  bool ok = true;
  if (w.k == 2 && w.l == 1) {
    const auto iso = isometries_from_witness(g, w);
    r.report["pair"] = {{"f", io::write(iso.f)},
                        {"g", io::write(iso.g)},
                        {"f_isometry", iso.f_isometry},
                        {"g_isometry", iso.g_isometry},
                        {"ranges_dominated", iso.ranges_dominated}};
    ok = iso.ok();
  }
  const auto m = matrix_isometries(g, w);
  r.report["matrix"] = {{"k", m.k},
                        {"l", m.l},
                        {"pieces", m.pieces.size()},
                        {"sources_orthogonal", m.sources_orthogonal},
                        {"ranges_orthogonal", m.ranges_orthogonal},
                        {"source_sum_is_unit", m.source_sum_is_unit},
                        {"range_sum_dominated", m.range_sum_dominated}};
  ok = ok && m.ok();
  r.report["outcome"] = ok ? "pass" : "fail";
  r.code = ok ? verified : rejected;
  r.summary = std::string("isometry identities ") + (ok ? "hold exactly" : "FAIL") + " for the (" + std::to_string(w.k) +
              "," + std::to_string(w.l) + ") witness";
  return r;
}

inline Result probe(const RunConfig& cfg, const Groupoid& g) {
  need_inputs(cfg, 1, "<presentation> --depth D --samples N --seed S");
  detail::check_depth(cfg.depth, max_search_depth);
  if (cfg.samples < 1) throw io::InputError("--samples", "need at least one sample");
  ProbeOptions opt;
  opt.depth = cfg.depth;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.max_n = cfg.max_n;
  opt.budget = cfg.budget;
  const auto rep = probes(g, opt);
  json order = json::array(), suspects = json::array();
  int found = 0;
  for (const auto& s : rep.order_unit) {
    json e = {{"x", s.x.to_string()}, {"y", s.y.to_string()}};
    e["n"] = s.found ? json(s.found->n) : json(nullptr);
    found += s.found.has_value();
    order.push_back(e);
  }
  for (const auto& s : rep.suspects)
    suspects.push_back({{"x", s.x.to_string()}, {"y", s.y.to_string()}, {"n", s.n},
                        {"premise", io::write_leq(add(s.x, s.x), s.y, s.cert)["triples"]}});
  Result r;
  r.report = {{"depth", cfg.depth},
              {"seed", cfg.seed},
              {"order_unit", order},
              {"order_unit_found", found},
              {"unperforation_tests", rep.unperforation_tests},
              {"unperforation_premises", rep.unperforation_premises},
              {"unperforation_suspects", suspects}};
  r.code = rep.suspects.empty() ? verified : inconclusive;
  r.summary = "order unit: " + std::to_string(found) + "/" + std::to_string(rep.order_unit.size()) +
              " samples certified; almost unperforation: " +
              (rep.suspects.empty() ? "no counterexample found"
                                    : std::to_string(rep.suspects.size()) + " budget-relative suspect(s)");
  return r;
}

}  // namespace commands

/// Run one subcommand. The report goes to `out` (JSON, or prose with
/// --human); diagnostics go to `err`.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.budget == 0) throw io::InputError("--budget", "budget must be positive");
    if (cfg.inputs.empty()) throw io::InputError("", "a presentation (builtin name or JSON file) is required");
    const std::string pres = cfg.inputs.front();
    const Groupoid g(io::load_presentation(pres));
    Result r;
    const auto& sc = cfg.subcommand;
    if (sc == "verify-witness") r = commands::verify_witness(cfg, g);
    else if (sc == "find-witness") r = commands::find_witness(cfg, g);
    else if (sc == "type-eq") r = commands::type_eq(cfg, g);
    else if (sc == "verify-cert") r = commands::verify_cert(cfg, g);
    else if (sc == "state") r = commands::state(cfg, g, pres);
    else if (sc == "tarski") r = commands::tarski(cfg, g, pres);
    else if (sc == "dichotomy") r = commands::dichotomy(cfg, g, pres);
    else if (sc == "orbits") r = commands::orbits(cfg, g);
    else if (sc == "ideal-check") r = commands::ideal_check(cfg, g);
    else if (sc == "isometries") r = commands::isometries(cfg, g);
    else if (sc == "probe") r = commands::probe(cfg, g);
    else throw io::InputError("", "unknown subcommand \"" + sc + "\"");
    r.report["subcommand"] = sc;
    r.report["presentation"] = pres;
    if (cfg.human) out << r.summary << "\n";
    else out << io::dump(r.report);
    return r.code;
  } catch (const io::InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const std::length_error& e) {
    err << "inconclusive: " << e.what() << "\n";
    return inconclusive;
  }
}

// ---------------------------------------------------------------------------
// Argument parsing

/// Parse argv into a RunConfig, or an exit code when parsing already decided
/// the outcome (--help prints usage and gives 0, bad flags give 3).
inline std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                               std::ostream& err) {
  CLI::App app{"Exact computations with ample groupoids given by compact open bisections", "ample"};
  app.require_subcommand(1);
  RunConfig cfg;
  struct Spec {
    const char* name;
    const char* help;
    const char* positionals;
    bool set, kl, depth, families, seed, samples, max_n;
  };
  const Spec specs[] = {
      {"verify-witness", "check a paradoxical decomposition", "presentation witness", false, false, false, false, false, false, false},
      {"find-witness", "search a (k,l)-paradoxical decomposition", "presentation", true, true, true, false, false, false, false},
      {"type-eq", "search x ~ y (or x <= y) in the type semigroup", "presentation", false, false, true, true, false, false, false},
      {"verify-cert", "check an equivalence, inequality, witness, state or Farkas file", "presentation certificate", false, false, false, false, false, false, false},
      {"state", "invariant state or Farkas certificate at a depth", "presentation", true, false, true, false, false, false, false},
      {"tarski", "state normalized on A, or a paradoxical decomposition of A", "presentation", true, false, true, false, false, false, true},
      {"dichotomy", "state versus paradox for the whole unit space", "presentation", false, false, true, false, false, false, true},
      {"orbits", "orbits and invariant subsets of a finite presentation", "presentation", false, false, false, false, false, false, false},
      {"ideal-check", "ideal lattice versus invariant subsets", "presentation", false, false, false, false, true, false, false},
      {"isometries", "isometry identities from a witness", "presentation witness", false, false, false, false, false, false, false},
      {"probe", "order-unit and almost-unperforation probes", "presentation", false, false, true, false, true, true, true},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("inputs", cfg.inputs, s.positionals)->required();
    sub->add_option("--budget", cfg.budget, "search node budget (default from AMPLE_BUDGET)");
    sub->add_flag("--human", cfg.human, "prose summary instead of JSON");
    sub->add_option("--out", cfg.out, "write the certificate here");
    if (s.set) sub->add_option("--set", cfg.set, "clopen: whole, cells like 1,22 or 0,2, or a .json file");
    if (s.kl) {
      sub->add_option("--k", cfg.k, "rows");
      sub->add_option("--l", cfg.l, "copies");
    }
    if (s.depth) sub->add_option("--depth", cfg.depth, "word length and cylinder depth bound");
    if (s.families) {
      sub->add_option("--x", cfg.x, "family: sets separated by ';' or a .json file")->required();
      sub->add_option("--y", cfg.y, "family: sets separated by ';' or a .json file")->required();
      sub->add_flag("--leq", cfg.leq, "search x <= y instead of x ~ y");
    }
    if (s.seed) sub->add_option("--seed", cfg.seed, "random seed");
    if (s.samples) sub->add_option("--samples", cfg.samples, "number of samples");
    if (s.max_n) sub->add_option("--max-n", cfg.max_n, "largest n tried");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(input_error);
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return cfg;
}

/// parse_args then dispatch.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  auto parsed = parse_args(argc, argv, out, err);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  return dispatch(std::get<RunConfig>(parsed), out, err);
}

}  // namespace ample::cli

#endif
