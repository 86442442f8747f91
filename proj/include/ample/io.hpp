#ifndef AMPLE_IO_HPP
#define AMPLE_IO_HPP

// JSON encodings of presentations, clopens, bisections, certificates, states
// and convolution elements. Readers report failures with a JSON pointer and,
// when loaded from text, the line it sits on.

#include <algorithm>
#include <cctype>
#include <cstring>
#include <limits>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ample/orbitlat.hpp"
#include "json.hpp"

namespace ample::io {

using json = nlohmann::json;

namespace schema {
inline constexpr const char* witness = "ample.witness/1";
inline constexpr const char* equiv = "ample.equiv/1";
inline constexpr const char* leq = "ample.leq/1";
inline constexpr const char* state = "ample.state/1";
inline constexpr const char* farkas = "ample.farkas/1";
inline constexpr const char* element = "ample.element/1";
inline constexpr const char* presentation = "ample.presentation/1";
}  // namespace schema

class InputError : public std::runtime_error {
 public:
  InputError(std::string pointer, std::string message, int line = 0)
      : std::runtime_error(format(pointer, message, line)), pointer_(std::move(pointer)), message_(std::move(message)),
        line_(line) {}

  const std::string& pointer() const { return pointer_; }
  const std::string& message() const { return message_; }
  int line() const { return line_; }

  InputError at_line(int line, const std::string& source) const {
    InputError e(pointer_, message_, line);
    e.source_ = source;
    e.full_ = (source.empty() ? "" : source + ":") + format(pointer_, message_, line);
    return e;
  }

  const char* what() const noexcept override { return full_.empty() ? std::runtime_error::what() : full_.c_str(); }

 private:
  static std::string format(const std::string& pointer, const std::string& message, int line) {
    std::string s = line > 0 ? "line " + std::to_string(line) + ": " : "";
    return s + (pointer.empty() ? "/" : pointer) + ": " + message;
  }

  std::string pointer_, message_, source_, full_;
  int line_;
};

// ---------------------------------------------------------------------------
// JSON pointer → line, by a light scan of text that already parsed.

class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

  /// Line of the value at the pointer, or of its nearest recorded ancestor.
  int line(std::string pointer) const {
    for (;;) {
      if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer.erase(pointer.rfind('/'));
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& path) {
    lines_.emplace(path, line_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // colon
        skip_ws();
        value(path + "/" + escape(key));
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (int i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(path + "/" + std::to_string(i));
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

// ---------------------------------------------------------------------------
// Reading helpers

namespace detail {

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw InputError(path, "integer out of range");
  return static_cast<int>(v);
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

inline std::string at(const std::string& path, const char* key) { return path + "/" + key; }
inline std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline void check_tag(const json& j, const std::string& path, const char* tag) {
  const auto t = text(field(j, path, "schema"), at(path, "schema"));
  if (t != tag) throw InputError(at(path, "schema"), "expected schema \"" + std::string(tag) + "\", got \"" + t + "\"");
}

inline bool digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rationals, spaces, clopens

inline json write(const Rational& q) { return {{"num", numerator_string(q)}, {"den", denominator_string(q)}}; }

inline Rational read_rational(const json& j, const std::string& path) {
  using namespace detail;
  const std::string num = text(field(j, path, "num"), at(path, "num"));
  const std::string den = text(field(j, path, "den"), at(path, "den"));
  const bool negative = !num.empty() && num[0] == '-';
  if (!digits(negative ? num.substr(1) : num)) throw InputError(at(path, "num"), "expected decimal digits");
  if (!digits(den)) throw InputError(at(path, "den"), "expected decimal digits");
  if (std::all_of(den.begin(), den.end(), [](char c) { return c == '0'; }))
    throw InputError(at(path, "den"), "denominator must be positive");
  return Rational(num + "/" + den);
}

inline json write(const UnitSpace& s) {
  if (s.is_finite()) return {{"kind", "finite"}, {"n", s.size()}};
  return {{"kind", "shift"}, {"k", s.size()}};
}

inline UnitSpace read_space(const json& j, const std::string& path) {
  using namespace detail;
  const auto kind = text(field(j, path, "kind"), at(path, "kind"));
  if (kind == "finite") {
    const int n = integer(field(j, path, "n"), at(path, "n"));
    if (n < 1 || n > 64) throw InputError(at(path, "n"), "finite spaces need 1 <= n <= 64");
    return UnitSpace::finite(n);
  }
  if (kind == "shift") {
    const int k = integer(field(j, path, "k"), at(path, "k"));
    if (k < 2 || k > 9) throw InputError(at(path, "k"), "shift spaces need 2 <= k <= 9");
    return UnitSpace::shift(k);
  }
  throw InputError(at(path, "kind"), "unknown space kind \"" + kind + "\"");
}

inline json write_cell(const Cell& c) { return c.point >= 0 ? json(c.point) : json(c.word); }

inline Cell read_cell(const json& j, const std::string& path, const UnitSpace& space) {
  if (space.is_finite()) {
    const int p = detail::integer(j, path);
    if (p < 0 || p >= space.size()) throw InputError(path, "point out of range for " + space.describe());
    return Cell::at(p);
  }
  const auto w = detail::text(j, path);
  if (!space.valid_word(w)) throw InputError(path, "word \"" + w + "\" uses letters outside " + space.describe());
  return Cell::cylinder(w);
}

inline json write(const Clopen& a) {
  json cells = json::array();
  for (const auto& c : a.cells()) cells.push_back(write_cell(c));
  return {{"space", write(a.space())}, {"cells", cells}};
}

inline Clopen read_clopen(const json& j, const std::string& path, const UnitSpace& expected) {
  using namespace detail;
  const auto space = read_space(field(j, path, "space"), at(path, "space"));
  if (!(space == expected))
    throw InputError(at(path, "space"), "clopen lives on " + space.describe() + ", expected " + expected.describe());
  const auto& cells = array(field(j, path, "cells"), at(path, "cells"));
  std::vector<Cell> out;
  for (std::size_t i = 0; i < cells.size(); ++i) out.push_back(read_cell(cells[i], at(at(path, "cells"), i), space));
  return Clopen::of(space, out);
}

// ---------------------------------------------------------------------------
// Presentations

inline json write(const Presentation& p) {
  json gens = json::array();
  for (const auto& g : p.generators) {
    json e = std::visit(
        [](const auto& a) -> json {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, PrefixMap>) {
            return {{"kind", "prefix_map"}, {"alpha", a.alpha}, {"beta", a.beta}};
          } else if constexpr (std::is_same_v<A, PartialInjection>) {
            json pairs = json::array();
            for (auto [s, t] : a.pairs) pairs.push_back({s, t});
            return {{"kind", "partial_injection"}, {"pairs", pairs}};
          } else {
            json pieces = json::array();
            for (const auto& pc : a.pieces) pieces.push_back({{"alpha", pc.alpha}, {"beta", pc.beta}});
            return {{"kind", "prefix_pieces"}, {"pieces", pieces}};
          }
        },
        g.action);
    if (!g.label.empty()) e["label"] = g.label;
    if (g.element) e["element"] = *g.element;
    gens.push_back(e);
  }
  json out{{"schema", schema::presentation}, {"space", write(p.space)}, {"generators", gens}};
  out["isotropy"] = p.table ? json{{"table", *p.table}} : json("free");
  if (!p.name.empty()) out["name"] = p.name;
  return out;
}

inline Presentation read_presentation(const json& j, const std::string& path) {
  using namespace detail;
  if (j.is_string()) {
    const auto alias = j.get<std::string>();
    try {
      if (auto p = builtin(alias)) return *p;
    } catch (const std::invalid_argument& err) {
      throw InputError(path, err.what());
    }
    throw InputError(path, "unknown builtin \"" + alias + "\"");
  }
  Presentation p{read_space(field(j, path, "space"), at(path, "space")), {}, std::nullopt, ""};
  if (j.contains("name")) p.name = text(j["name"], at(path, "name"));
  const auto gpath = at(path, "generators");
  const auto& gens = array(field(j, path, "generators"), gpath);
  auto read_prefix = [&](const json& e, const std::string& ep) {
    const auto alpha = text(field(e, ep, "alpha"), at(ep, "alpha"));
    const auto beta = text(field(e, ep, "beta"), at(ep, "beta"));
    if (!p.space.is_shift()) throw InputError(ep, "prefix maps need a shift space");
    if (!p.space.valid_word(alpha)) throw InputError(at(ep, "alpha"), "letters outside " + p.space.describe());
    if (!p.space.valid_word(beta)) throw InputError(at(ep, "beta"), "letters outside " + p.space.describe());
    return PrefixMap{alpha, beta};
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto ep = at(gpath, i);
    const auto& e = gens[i];
    const auto kind = text(field(e, ep, "kind"), at(ep, "kind"));
    Generator g;
    if (e.contains("label")) g.label = text(e["label"], at(ep, "label"));
    if (e.contains("element")) g.element = integer(e["element"], at(ep, "element"));
    if (kind == "prefix_map") {
      g.action = read_prefix(e, ep);
    } else if (kind == "prefix_pieces") {
      PrefixPieces pp;
      const auto pieces_path = at(ep, "pieces");
      const auto& pieces = array(field(e, ep, "pieces"), pieces_path);
      for (std::size_t k = 0; k < pieces.size(); ++k) pp.pieces.push_back(read_prefix(pieces[k], at(pieces_path, k)));
      g.action = pp;
    } else if (kind == "partial_injection") {
      if (!p.space.is_finite()) throw InputError(ep, "partial injections need a finite space");
      PartialInjection pi;
      const auto pairs_path = at(ep, "pairs");
      const auto& pairs = array(field(e, ep, "pairs"), pairs_path);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto pp = at(pairs_path, k);
        if (!pairs[k].is_array() || pairs[k].size() != 2) throw InputError(pp, "expected a [source, target] pair");
        const int s = integer(pairs[k][0], at(pp, std::size_t{0})), t = integer(pairs[k][1], at(pp, std::size_t{1}));
        if (s < 0 || s >= p.space.size() || t < 0 || t >= p.space.size())
          throw InputError(pp, "point out of range for " + p.space.describe());
        pi.pairs.emplace_back(s, t);
      }
      g.action = pi;
    } else {
      throw InputError(at(ep, "kind"), "unknown generator kind \"" + kind + "\"");
    }
    try {
      generator_map(p.space, g);
    } catch (const std::invalid_argument& err) {
      throw InputError(ep, "generator g" + std::to_string(i + 1) + ": " + err.what());
    }
    p.generators.push_back(std::move(g));
  }
  if (j.contains("isotropy")) {
    const auto& iso = j["isotropy"];
    const auto ipath = at(path, "isotropy");
    if (iso.is_string()) {
      if (iso.get<std::string>() != "free") throw InputError(ipath, "isotropy must be \"free\" or a table");
    } else {
      const auto tpath = at(ipath, "table");
      const auto& rows = array(field(iso, ipath, "table"), tpath);
      MultiplicationTable table;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& row = table.emplace_back();
        for (std::size_t c = 0; c < array(rows[r], at(tpath, r)).size(); ++c)
          row.push_back(integer(rows[r][c], at(at(tpath, r), c)));
      }
      p.table = std::move(table);
    }
  }
  try {
    Groupoid check(p);
  } catch (const std::invalid_argument& err) {
    throw InputError(path, err.what());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Words, bisections, families

inline json write(const Word& w) {
  json out = json::array();
  for (const auto& l : w.letters) out.push_back({"g" + std::to_string(l.gen + 1), l.inverse ? -1 : 1});
  return out;
}

inline Word read_word(const json& j, const std::string& path, const Groupoid& g) {
  using namespace detail;
  Word w;
  const auto& letters = array(j, path);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const auto lp = at(path, i);
    if (!letters[i].is_array() || letters[i].size() != 2) throw InputError(lp, "expected [\"gN\", ±1]");
    const auto name = text(letters[i][0], at(lp, std::size_t{0}));
    const int exp = integer(letters[i][1], at(lp, std::size_t{1}));
    if (name.size() < 2 || name[0] != 'g' || !digits(name.substr(1)) || name.size() > 6)
      throw InputError(at(lp, std::size_t{0}), "generator names look like g1, g2, ...");
    const int gen = std::stoi(name.substr(1)) - 1;
    if (gen < 0 || gen >= g.generator_count()) throw InputError(at(lp, std::size_t{0}), "no generator " + name);
    if (exp != 1 && exp != -1) throw InputError(at(lp, std::size_t{1}), "exponent must be 1 or -1");
    w.letters.push_back(Letter{exp < 0, gen});
  }
  return w;
}

inline json write(const Bisection& s) {
  json pieces = json::array();
  for (const auto& p : s.pieces()) pieces.push_back({{"word", write(p.word)}, {"domain", write(p.domain)}});
  return pieces;
}

inline Bisection read_bisection(const json& j, const std::string& path, const Groupoid& g) {
  using namespace detail;
  std::vector<ArrowPiece> pieces;
  const auto& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto pp = at(path, i);
    const auto w = read_word(field(arr[i], pp, "word"), at(pp, "word"), g);
    const auto d = read_clopen(field(arr[i], pp, "domain"), at(pp, "domain"), g.space());
    if (!is_subset(d, g.word_map(w).domain()))
      throw InputError(at(pp, "domain"), "domain leaves the domain of " + to_string(w));
    if (!g.is_reduced(w)) throw InputError(at(pp, "word"), "word is not in reduced form");
    pieces.push_back({w, d});
  }
  Bisection s(g.space(), pieces);
  if (auto err = g.check(s)) throw InputError(path, *err);
  return s;
}

inline json write(const LabeledFamily& f) {
  json out = json::array();
  for (int i = 1; i <= f.size(); ++i) out.push_back({{"label", i}, {"set", write(f.at(i))}});
  return out;
}

inline LabeledFamily read_family(const json& j, const std::string& path, const UnitSpace& space) {
  using namespace detail;
  std::vector<std::pair<Clopen, int>> entries;
  const auto& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto ep = at(path, i);
    const int label = integer(field(arr[i], ep, "label"), at(ep, "label"));
    if (label < 1) throw InputError(at(ep, "label"), "labels must be positive");
    entries.emplace_back(read_clopen(field(arr[i], ep, "set"), at(ep, "set"), space), label);
  }
  return LabeledFamily::normalize(space, entries);
}

inline json write_triples(const EquivCertificate& c) {
  json out = json::array();
  for (const auto& t : c.triples) out.push_back({{"bisection", write(t.w)}, {"from", t.from}, {"to", t.to}});
  return out;
}

inline EquivCertificate read_triples(const json& j, const std::string& path, const Groupoid& g) {
  using namespace detail;
  EquivCertificate c;
  const auto& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto tp = at(path, i);
    c.triples.push_back({read_bisection(field(arr[i], tp, "bisection"), at(tp, "bisection"), g),
                         integer(field(arr[i], tp, "from"), at(tp, "from")),
                         integer(field(arr[i], tp, "to"), at(tp, "to"))});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Certificates

struct EquivFile {
  LabeledFamily x, y;
  EquivCertificate cert;
};

struct LeqFile {
  LabeledFamily x, y;
  LeqCertificate cert;
};

inline json write_equiv(const LabeledFamily& x, const LabeledFamily& y, const EquivCertificate& c) {
  return {{"schema", schema::equiv}, {"x", write(x)}, {"y", write(y)}, {"triples", write_triples(c)}};
}

inline json write_leq(const LabeledFamily& x, const LabeledFamily& y, const LeqCertificate& c) {
  return {{"schema", schema::leq},
          {"x", write(x)},
          {"y", write(y)},
          {"remainder", write(c.remainder)},
          {"triples", write_triples(c.equivalence)}};
}

inline EquivFile read_equiv(const json& j, const Groupoid& g) {
  using namespace detail;
  check_tag(j, "", schema::equiv);
  return {read_family(field(j, "", "x"), "/x", g.space()), read_family(field(j, "", "y"), "/y", g.space()),
          read_triples(field(j, "", "triples"), "/triples", g)};
}

inline LeqFile read_leq(const json& j, const Groupoid& g) {
  using namespace detail;
  check_tag(j, "", schema::leq);
  return {read_family(field(j, "", "x"), "/x", g.space()),
          read_family(field(j, "", "y"), "/y", g.space()),
          {read_family(field(j, "", "remainder"), "/remainder", g.space()),
           read_triples(field(j, "", "triples"), "/triples", g)}};
}

inline json write(const ParadoxWitness& w) {
  json rows = json::array();
  for (const auto& row : w.rows) {
    json r = json::array();
    for (const auto& e : row) r.push_back({{"bisection", write(e.v)}, {"m", e.m}});
    rows.push_back(r);
  }
  return {{"schema", schema::witness}, {"A", write(w.a)}, {"k", w.k}, {"l", w.l}, {"rows", rows}};
}

/// Shape problems (k, l, m ranges) are left to verify_witness so that they
/// are reported as violated clauses rather than input errors.
inline ParadoxWitness read_witness(const json& j, const Groupoid& g) {
  using namespace detail;
  check_tag(j, "", schema::witness);
  ParadoxWitness w{read_clopen(field(j, "", "A"), "/A", g.space()), integer(field(j, "", "k"), "/k"),
                   integer(field(j, "", "l"), "/l"), {}};
  const auto& rows = array(field(j, "", "rows"), "/rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto rp = at("/rows", i);
    auto& row = w.rows.emplace_back();
    const auto& entries = array(rows[i], rp);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto ep = at(rp, k);
      row.push_back({read_bisection(field(entries[k], ep, "bisection"), at(ep, "bisection"), g),
                     integer(field(entries[k], ep, "m"), at(ep, "m"))});
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// States and Farkas certificates

inline json write(const StateVector& s, const std::string& presentation) {
  json cells = json::array(), values = json::array();
  for (const auto& c : s.cells) cells.push_back(write_cell(c));
  for (const auto& v : s.values) values.push_back(write(v));
  return {{"schema", schema::state}, {"presentation", presentation}, {"space", write(s.space)},
          {"depth", s.depth},        {"partial", s.partial},          {"cells", cells},
          {"values", values}};
}

inline StateVector read_state(const json& j, const UnitSpace& space) {
  using namespace detail;
  check_tag(j, "", schema::state);
  const auto s = read_space(field(j, "", "space"), "/space");
  if (!(s == space)) throw InputError("/space", "state lives on " + s.describe() + ", expected " + space.describe());
  StateVector out{space, integer(field(j, "", "depth"), "/depth"), {}, {}, false};
  if (out.depth < 0) throw InputError("/depth", "depth must be nonnegative");
  const auto& p = field(j, "", "partial");
  if (!p.is_boolean()) throw InputError("/partial", "expected true or false");
  out.partial = p.get<bool>();
  const auto& cells = array(field(j, "", "cells"), "/cells");
  const auto& values = array(field(j, "", "values"), "/values");
  if (cells.size() != values.size()) throw InputError("/values", "one value per cell expected");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.cells.push_back(read_cell(cells[i], at("/cells", i), space));
    out.values.push_back(read_rational(values[i], at("/values", i)));
  }
  return out;
}

inline json write(const FarkasCertificate& f, const ConstraintSystem& cs, const std::string& presentation) {
  json rows = json::array(), mult = json::array();
  for (std::size_t i = 0; i < cs.row_labels.size(); ++i) {
    rows.push_back(cs.row_labels[i]);
    mult.push_back(write(f.multipliers[i]));
  }
  return {{"schema", schema::farkas}, {"presentation", presentation}, {"space", write(cs.space)},
          {"depth", cs.depth},         {"rows", rows},                 {"multipliers", mult}};
}

inline FarkasCertificate read_farkas(const json& j) {
  using namespace detail;
  check_tag(j, "", schema::farkas);
  FarkasCertificate f;
  const auto& mult = array(field(j, "", "multipliers"), "/multipliers");
  for (std::size_t i = 0; i < mult.size(); ++i) f.multipliers.push_back(read_rational(mult[i], at("/multipliers", i)));
  return f;
}

// ---------------------------------------------------------------------------
// Convolution elements

inline json write(const ConvElement& a) {
  json terms = json::array();
  for (const auto& t : a.terms())
    terms.push_back({{"word", write(t.word)}, {"cell", write_cell(t.cell)}, {"coef", write(t.coef)}});
  return terms;
}

inline ConvElement read_element(const json& j, const std::string& path, const Groupoid& g) {
  using namespace detail;
  std::vector<ConvTerm> terms;
  const auto& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto tp = at(path, i);
    const auto w = read_word(field(arr[i], tp, "word"), at(tp, "word"), g);
    const auto c = read_cell(field(arr[i], tp, "cell"), at(tp, "cell"), g.space());
    if (!g.word_map(g.reduce(w)).domain().contains(c))
      throw InputError(at(tp, "cell"), "cell lies outside the domain of " + to_string(w));
    terms.push_back({w, c, read_rational(field(arr[i], tp, "coef"), at(tp, "coef"))});
  }
  return ConvElement::from_terms(g, terms);
}

// ---------------------------------------------------------------------------
// Files

struct Document {
  std::string source;  // file name for messages
  std::string text;
  json value;

  /// Run a reader on the document, attaching line numbers to its errors.
  template <class F>
  auto read(F&& reader) const -> decltype(reader(value)) {
    try {
      return reader(value);
    } catch (const InputError& e) {
      throw e.at_line(LineIndex(text).line(e.pointer()), source);
    }
  }
};

inline Document parse_text(std::string text, std::string source = "") {
  try {
    json v = json::parse(text);
    return {std::move(source), std::move(text), std::move(v)};
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw InputError("", std::string("malformed JSON: ") + e.what()).at_line(line, source);
  }
}

inline Document load(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("", "cannot open file").at_line(0, file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), file);
}

/// A builtin alias, or a path to a presentation file.
inline Presentation load_presentation(const std::string& spec) {
  try {
    if (auto p = builtin(spec)) return *p;
  } catch (const std::invalid_argument& err) {
    throw InputError("", err.what()).at_line(0, spec);
  }
  if (spec.find(':') != std::string::npos && spec.find(".json") == std::string::npos)
    throw InputError("", "unknown builtin \"" + spec + "\"");
  const auto doc = load(spec);
  auto p = doc.read([](const json& j) { return read_presentation(j, ""); });
  if (p.name.empty()) p.name = spec;
  return p;
}

/// Canonical text: two-space indentation, keys sorted, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ample::io

#endif
