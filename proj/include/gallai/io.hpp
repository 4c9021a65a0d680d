#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gallai/coloring.hpp"
#include "gallai/constructions.hpp"
#include "gallai/pattern.hpp"
#include "gallai/search.hpp"
#include "gallai/structure.hpp"

namespace gallai {

using nlohmann::json;

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- text coloring format (.grc) -------------------------------------------
//
//   line 1:        n k
//   line 2+u:      colors of (u,u+1) .. (u,n-1), space separated, 1-based
//   '#' starts a comment running to end of line.

inline std::string render_grc(const EdgeColoring& c) {
  std::string out = std::to_string(c.order()) + " " + std::to_string(c.palette()) + "\n";
  for (Vertex u = 0; u + 1 < c.order(); ++u) {
    for (Vertex v = u + 1; v < c.order(); ++v) {
      if (v > u + 1) out += ' ';
      out += std::to_string(c.color(u, v));
    }
    out += '\n';
  }
  return out;
}

inline EdgeColoring parse_grc(std::string_view text) {
  std::vector<long long> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      long long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 1'000'000'000) throw ParseError("grc: number too large");
        ++i;
      }
      tokens.push_back(value);
    } else {
      throw ParseError(std::string("grc: unexpected character '") + ch + "'");
    }
  }
  if (tokens.size() < 2) throw ParseError("grc: missing header 'n k'");
  const auto n = static_cast<std::size_t>(tokens[0]);
  const auto k = tokens[1];
  if (n < 1) throw ParseError("grc: n must be at least 1");
  if (k < 1 || k > kMaxColors) throw ParseError("grc: k out of range");
  const std::size_t m = EdgeColoring::edge_count(n);
  if (tokens.size() - 2 < m) throw ParseError("grc: truncated, expected " + std::to_string(m) + " edge colors");
  if (tokens.size() - 2 > m) throw ParseError("grc: trailing data after edge colors");
  std::vector<Color> colors(m);
  for (std::size_t e = 0; e < m; ++e) {
    if (tokens[e + 2] < 1 || tokens[e + 2] > k) throw ParseError("grc: edge color outside 1..k");
    colors[e] = static_cast<Color>(tokens[e + 2]);
  }
  return EdgeColoring::from_upper_triangle(n, static_cast<Color>(k), colors);
}

// --- JSON documents --------------------------------------------------------

/// A coloring with optional provenance (construction trace or search task)
/// and digest.
struct ColoringDocument {
  int version = 1;
  EdgeColoring coloring;
  std::optional<json> provenance;
  std::optional<std::string> digest;

  friend bool operator==(const ColoringDocument&, const ColoringDocument&) = default;
};

inline constexpr std::string_view kDocumentFormat = "gallai-coloring";

inline json coloring_to_json(const EdgeColoring& c) {
  json edges = json::array();
  for (Vertex u = 0; u < c.order(); ++u)
    for (Vertex v = u + 1; v < c.order(); ++v) edges.push_back({u, v, c.color(u, v)});
  return {{"n", c.order()}, {"k", c.palette()}, {"edges", std::move(edges)}};
}

inline EdgeColoring coloring_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<long long>();
    const auto k = j.at("k").get<long long>();
    if (n < 1 || n > 100000) throw ParseError("json: n out of range");
    if (k < 1 || k > kMaxColors) throw ParseError("json: k out of range");
    EdgeColoring c(static_cast<std::size_t>(n), static_cast<Color>(k));
    const auto& edges = j.at("edges");
    if (!edges.is_array() || edges.size() != EdgeColoring::edge_count(c.order()))
      throw ParseError("json: edges must list every pair exactly once");
    std::vector<bool> seen(c.size(), false);
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 3) throw ParseError("json: edge entries are [u, v, color]");
      const auto u = e[0].get<long long>(), v = e[1].get<long long>(), col = e[2].get<long long>();
      if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ParseError("json: bad edge endpoints");
      if (col < 1 || col > k) throw ParseError("json: edge color outside 1..k");
      const auto idx = c.edge_index(static_cast<Vertex>(u), static_cast<Vertex>(v));
      if (seen[idx]) throw ParseError("json: duplicate edge");
      seen[idx] = true;
      c.set_color(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Color>(col));
    }
    return c;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("json: ") + ex.what());
  }
}

inline json document_to_json(const ColoringDocument& d) {
  json j = {{"format", kDocumentFormat}, {"version", d.version}};
  j.update(coloring_to_json(d.coloring));
  if (d.digest) j["digest"] = *d.digest;
  if (d.provenance) j["provenance"] = *d.provenance;
  return j;
}

inline ColoringDocument document_from_json(const json& j) {
  if (!j.is_object() || j.value("format", std::string{}) != kDocumentFormat)
    throw ParseError("json: not a gallai-coloring document");
  ColoringDocument d;
  try {
    d.version = j.at("version").get<int>();
  } catch (const json::exception& ex) {
    throw ParseError(std::string("json: ") + ex.what());
  }
  if (d.version != 1) throw ParseError("json: unsupported document version");
  d.coloring = coloring_from_json(j);
  if (j.contains("digest")) {
    if (!j["digest"].is_string()) throw ParseError("json: digest must be a string");
    d.digest = j["digest"].get<std::string>();
    if (*d.digest != canonical_digest(d.coloring)) throw ParseError("json: digest does not match the coloring");
  }
  if (j.contains("provenance")) d.provenance = j["provenance"];
  return d;
}

inline std::string render_document(const ColoringDocument& d) { return document_to_json(d).dump(2) + "\n"; }

inline ColoringDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("json: ") + ex.what());
  }
  return document_from_json(j);
}

/// Accepts either format, deciding by the first non-space character.
inline ColoringDocument parse_any(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return parse_document(text);
  return ColoringDocument{1, parse_grc(text), std::nullopt, std::nullopt};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// --- patterns --------------------------------------------------------------

/// Explicit pattern file: vertex count, then edges as vertex pairs.
inline SmallGraph parse_explicit_pattern(std::string_view text) {
  std::vector<long long> tokens;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        tokens.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw ParseError("pattern: bad token " + tok);
      } catch (const std::logic_error&) {
        throw ParseError("pattern: bad token " + tok);
      }
    }
  }
  if (tokens.empty() || tokens.size() % 2 == 0) throw ParseError("pattern: expected order followed by edge pairs");
  if (tokens[0] < 2 || tokens[0] > static_cast<long long>(PatternSpec::kMaxExplicitOrder))
    throw ParseError("pattern: order must be 2..8");
  SmallGraph g(static_cast<std::size_t>(tokens[0]));
  for (std::size_t i = 1; i < tokens.size(); i += 2) {
    if (tokens[i] < 0 || tokens[i + 1] < 0 || tokens[i] >= tokens[0] || tokens[i + 1] >= tokens[0] ||
        tokens[i] == tokens[i + 1])
      throw ParseError("pattern: bad edge");
    g.add_edge(static_cast<std::size_t>(tokens[i]), static_cast<std::size_t>(tokens[i + 1]));
  }
  return g;
}

/// CLI pattern syntax: w4 | p3 | c4 | k3 | kt:N | wheel:M | path:N | cycle:N
/// | clique:N | explicit:FILE.
inline PatternSpec parse_pattern(std::string_view spec) {
  auto number_after = [&](std::string_view prefix) -> std::size_t {
    const auto rest = spec.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string_view::npos || rest.size() > 4)
      throw ParseError("pattern: expected a number in '" + std::string(spec) + "'");
    return static_cast<std::size_t>(std::stoul(std::string(rest)));
  };
  try {
    if (spec == "w4") return PatternSpec::wheel(4);
    if (spec == "p3") return PatternSpec::path(3);
    if (spec == "c4") return PatternSpec::cycle(4);
    if (spec == "k3") return PatternSpec::clique(3);
    if (spec.starts_with("kt:")) return PatternSpec::clique(number_after("kt:"));
    if (spec.starts_with("clique:")) return PatternSpec::clique(number_after("clique:"));
    if (spec.starts_with("wheel:")) return PatternSpec::wheel(number_after("wheel:"));
    if (spec.starts_with("path:")) return PatternSpec::path(number_after("path:"));
    if (spec.starts_with("cycle:")) return PatternSpec::cycle(number_after("cycle:"));
    if (spec.starts_with("explicit:"))
      return PatternSpec::explicit_graph(parse_explicit_pattern(read_file(std::string(spec.substr(9)))));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("pattern: ") + ex.what());
  }
  throw ParseError("pattern: unknown pattern '" + std::string(spec) + "'");
}

inline json pattern_to_json(const PatternSpec& p) {
  if (p.kind() != PatternSpec::Kind::Explicit) return p.name();
  json edges = json::array();
  for (auto [a, b] : p.graph().edges()) edges.push_back({a, b});
  return {{"explicit", {{"order", p.order()}, {"edges", std::move(edges)}}}};
}

inline PatternSpec pattern_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.starts_with("explicit")) throw ParseError("json: explicit patterns must be given inline");
    return parse_pattern(s);
  }
  try {
    const auto& e = j.at("explicit");
    const auto order = e.at("order").get<long long>();
    if (order < 2 || order > static_cast<long long>(PatternSpec::kMaxExplicitOrder))
      throw ParseError("json: explicit pattern order must be 2..8");
    SmallGraph g(static_cast<std::size_t>(order));
    for (const auto& ed : e.at("edges")) {
      const auto a = ed.at(0).get<long long>(), b = ed.at(1).get<long long>();
      if (a < 0 || b < 0 || a >= order || b >= order || a == b) throw ParseError("json: bad pattern edge");
      g.add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    return PatternSpec::explicit_graph(std::move(g));
  } catch (const json::exception& ex) {
    throw ParseError(std::string("json: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("json: ") + ex.what());
  }
}

// --- certificates and results ---------------------------------------------

inline json embedding_to_json(const Embedding& e) {
  json j = {{"pattern", e.color ? pattern_to_json(e.pattern) : json("rainbow-triangle")},
            {"vertices", e.vertex_map}};
  j["color"] = e.color ? json(*e.color) : json(nullptr);
  return j;
}

inline json trace_to_json(const ConstructionTrace& t) {
  json j = {{"size", t.size}};
  switch (t.kind) {
    case ConstructionTrace::Kind::Base:
      j["kind"] = "base";
      j["base_digest"] = t.base_digest;
      break;
    case ConstructionTrace::Kind::Join:
      j["kind"] = "join";
      j["join_color"] = t.join_color;
      break;
    case ConstructionTrace::Kind::Blowup:
      j["kind"] = "blowup";
      j["quotient"] = coloring_to_json(*t.quotient);
      j["quotient_color_map"] = {{"1", t.quotient_color_map.at(1)}, {"2", t.quotient_color_map.at(2)}};
      break;
  }
  if (!t.children.empty()) {
    j["children"] = json::array();
    for (const auto& ch : t.children) j["children"].push_back(trace_to_json(*ch));
  }
  return j;
}

inline std::shared_ptr<const ConstructionTrace> trace_from_json(const json& j) {
  try {
    auto t = std::make_shared<ConstructionTrace>();
    t->size = j.at("size").get<std::size_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "base") {
      t->kind = ConstructionTrace::Kind::Base;
      t->base_digest = j.at("base_digest").get<std::string>();
    } else if (kind == "join") {
      t->kind = ConstructionTrace::Kind::Join;
      t->join_color = j.at("join_color").get<Color>();
    } else if (kind == "blowup") {
      t->kind = ConstructionTrace::Kind::Blowup;
      t->quotient = coloring_from_json(j.at("quotient"));
      const auto& m = j.at("quotient_color_map");
      t->quotient_color_map = {0, m.at("1").get<Color>(), m.at("2").get<Color>()};
    } else {
      throw ParseError("trace: unknown node kind " + kind);
    }
    if (j.contains("children"))
      for (const auto& ch : j.at("children")) t->children.push_back(trace_from_json(ch));
    return t;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("trace: ") + ex.what());
  }
}

inline json partition_to_json(const GallaiPartition& p) {
  return {{"p", p.parts.size()},
          {"parts", p.parts},
          {"cross_colors", p.cross_colors},
          {"reduced", coloring_to_json(p.reduced)},
          {"reduced_digest", canonical_digest(p.reduced)}};
}

inline json apex_to_json(const ApexSequence& s) {
  json entries = json::array();
  for (auto [v, c] : s.entries) entries.push_back({{"vertex", v}, {"color", c}});
  return {{"m", s.entries.size()}, {"entries", std::move(entries)}, {"remainder", s.remainder}};
}

inline std::string_view symmetry_name(SymmetryLevel s) {
  switch (s) {
    case SymmetryLevel::None: return "none";
    case SymmetryLevel::ColorSwap: return "colorSwap";
    case SymmetryLevel::VertexOrder: return "vertexOrder";
  }
  return "colorSwap";
}

inline SymmetryLevel parse_symmetry(std::string_view s) {
  if (s == "none") return SymmetryLevel::None;
  if (s == "colorSwap") return SymmetryLevel::ColorSwap;
  if (s == "vertexOrder") return SymmetryLevel::VertexOrder;
  throw ParseError("unknown symmetry level '" + std::string(s) + "'");
}

inline json task_to_json(const SearchTask& t) {
  json forbidden = json::array();
  for (const auto& f : t.forbidden)
    forbidden.push_back({{"pattern", pattern_to_json(f.pattern)}, {"color", f.color ? json(*f.color) : json(nullptr)}});
  return {{"n", t.n},
          {"k", t.k},
          {"forbidden", std::move(forbidden)},
          {"forbid_rainbow_triangle", t.forbid_rainbow_triangle},
          {"symmetry", symmetry_name(t.symmetry)},
          {"node_limit", t.node_limit},
          {"seed", t.seed},
          {"restart_base", t.restart_base}};
}

inline SearchTask task_from_json(const json& j) {
  try {
    SearchTask t;
    const auto n = j.at("n").get<long long>();
    const auto k = j.at("k").get<long long>();
    if (n < 1 || n > static_cast<long long>(kMaxSearchOrder)) throw ParseError("task: n must be 1..64");
    if (k < 1 || k > kMaxColors) throw ParseError("task: k out of range");
    t.n = static_cast<std::size_t>(n);
    t.k = static_cast<Color>(k);
    for (const auto& f : j.at("forbidden")) {
      ForbiddenPattern fp{pattern_from_json(f.at("pattern")), std::nullopt};
      if (f.contains("color") && !f["color"].is_null()) {
        const auto c = f["color"].get<long long>();
        if (c < 1 || c > k) throw ParseError("task: forbidden color outside palette");
        fp.color = static_cast<Color>(c);
      }
      t.forbidden.push_back(std::move(fp));
    }
    t.forbid_rainbow_triangle = j.value("forbid_rainbow_triangle", false);
    t.symmetry = parse_symmetry(j.value("symmetry", std::string("colorSwap")));
    t.node_limit = j.value("node_limit", t.node_limit);
    if (t.node_limit < 1) throw ParseError("task: node_limit must be positive");
    t.seed = j.value("seed", t.seed);
    t.restart_base = j.value("restart_base", t.restart_base);
    return t;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("task: ") + ex.what());
  }
}

inline std::string_view status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Witness: return "witness";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::LimitReached: return "limit-reached";
  }
  return "limit-reached";
}

/// Deterministic part of a search outcome (wall time is excluded).
inline json outcome_to_json(const SearchOutcome& o, const SearchTask& t) {
  json j = {{"status", status_name(o.status)},
            {"task", task_to_json(t)},
            {"stats", {{"nodes", o.stats.nodes}, {"prunes", o.stats.prunes}, {"restarts", o.stats.restarts}}}};
  if (o.witness) {
    j["witness"] = coloring_to_json(*o.witness);
    j["witness_digest"] = canonical_digest(*o.witness);
  }
  return j;
}

}  // namespace gallai
