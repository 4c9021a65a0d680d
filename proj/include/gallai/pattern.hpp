#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gallai/coloring.hpp"

namespace gallai {

/// Small simple graph on at most 64 labelled vertices, adjacency as masks.
struct SmallGraph {
  std::size_t order = 0;
  std::vector<std::uint64_t> adj;

  explicit SmallGraph(std::size_t n = 0) : order(n), adj(n, 0) {
    if (n > 64) throw std::invalid_argument("pattern graphs are limited to 64 vertices");
  }

  void add_edge(std::size_t a, std::size_t b) {
    if (a == b || a >= order || b >= order) throw std::invalid_argument("bad pattern edge");
    adj[a] |= std::uint64_t{1} << b;
    adj[b] |= std::uint64_t{1} << a;
  }
  bool has_edge(std::size_t a, std::size_t b) const { return (adj[a] >> b) & 1U; }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = a + 1; b < order; ++b)
        if (has_edge(a, b)) out.emplace_back(a, b);
    return out;
  }

  bool connected() const {
    if (order == 0) return false;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::size_t v = 0; v < order; ++v)
        if ((frontier >> v) & 1U) next |= adj[v];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == (order == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1);
  }

  friend bool operator==(const SmallGraph&, const SmallGraph&) = default;
};

/// A forbidden monochromatic target.
///
/// Vertex conventions of the generated pattern graph, which embeddings follow:
///   Wheel(m):  rim 0..m-1 in cycle order, hub m (written (r0,...,r{m-1}; hub))
///   Path(t):   0-1-...-(t-1)
///   Cycle(t):  0-1-...-(t-1)-0
///   Clique(t): all pairs
class PatternSpec {
 public:
  enum class Kind { Wheel, Path, Cycle, Clique, Explicit };

  static constexpr std::size_t kMaxExplicitOrder = 8;

  static PatternSpec wheel(std::size_t rim) {
    if (rim < 3) throw std::invalid_argument("wheel needs at least 3 rim vertices");
    return PatternSpec(Kind::Wheel, rim);
  }
  static PatternSpec path(std::size_t vertices = 3) {
    if (vertices < 2) throw std::invalid_argument("path needs at least 2 vertices");
    return PatternSpec(Kind::Path, vertices);
  }
  static PatternSpec cycle(std::size_t length = 4) {
    if (length < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    return PatternSpec(Kind::Cycle, length);
  }
  static PatternSpec clique(std::size_t t) {
    if (t < 2) throw std::invalid_argument("clique needs at least 2 vertices");
    return PatternSpec(Kind::Clique, t);
  }
  static PatternSpec explicit_graph(SmallGraph g) {
    if (g.order < 2 || g.order > kMaxExplicitOrder)
      throw std::invalid_argument("explicit patterns must have 2..8 vertices");
    if (!g.connected()) throw std::invalid_argument("explicit patterns must be connected");
    PatternSpec p(Kind::Explicit, g.order);
    p.explicit_ = std::move(g);
    return p;
  }

  Kind kind() const noexcept { return kind_; }
  /// Rim size for wheels, vertex count otherwise.
  std::size_t parameter() const noexcept { return param_; }

  std::size_t order() const noexcept { return kind_ == Kind::Wheel ? param_ + 1 : param_; }

  SmallGraph graph() const {
    if (kind_ == Kind::Explicit) return *explicit_;
    SmallGraph g(order());
    switch (kind_) {
      case Kind::Wheel:
        for (std::size_t i = 0; i < param_; ++i) {
          g.add_edge(i, (i + 1) % param_);
          g.add_edge(i, param_);
        }
        break;
      case Kind::Path:
        for (std::size_t i = 0; i + 1 < param_; ++i) g.add_edge(i, i + 1);
        break;
      case Kind::Cycle:
        for (std::size_t i = 0; i < param_; ++i) g.add_edge(i, (i + 1) % param_);
        break;
      case Kind::Clique:
        for (std::size_t i = 0; i < param_; ++i)
          for (std::size_t j = i + 1; j < param_; ++j) g.add_edge(i, j);
        break;
      case Kind::Explicit:
        break;
    }
    return g;
  }

  /// Short name used by the CLI and JSON: wheel:4, path:3, cycle:4, clique:3,
  /// explicit.
  std::string name() const {
    switch (kind_) {
      case Kind::Wheel: return "wheel:" + std::to_string(param_);
      case Kind::Path: return "path:" + std::to_string(param_);
      case Kind::Cycle: return "cycle:" + std::to_string(param_);
      case Kind::Clique: return "clique:" + std::to_string(param_);
      case Kind::Explicit: return "explicit";
    }
    return {};
  }

  friend bool operator==(const PatternSpec&, const PatternSpec&) = default;

 private:
  PatternSpec(Kind k, std::size_t p) : kind_(k), param_(p) {}

  Kind kind_;
  std::size_t param_;
  std::optional<SmallGraph> explicit_;
};

/// Certificate of a detected copy: pattern vertex i maps to vertex_map[i].
/// `color` is empty for rainbow-triangle certificates.
struct Embedding {
  PatternSpec pattern;
  std::optional<Color> color;
  std::vector<Vertex> vertex_map;
};

/// Re-checks an embedding against the host: injective, in range, and every
/// pattern edge has the stated color (or, for a rainbow triangle, three
/// distinct colors).
inline bool validate_embedding(const EdgeColoring& c, const Embedding& e) {
  const auto g = e.pattern.graph();
  if (e.vertex_map.size() != g.order) return false;
  for (std::size_t i = 0; i < e.vertex_map.size(); ++i) {
    if (e.vertex_map[i] >= c.order()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (e.vertex_map[i] == e.vertex_map[j]) return false;
  }
  if (!e.color) {
    if (g.order != 3 || g.edges().size() != 3) return false;
    const auto& m = e.vertex_map;
    const Color a = c.color(m[0], m[1]), b = c.color(m[1], m[2]), d = c.color(m[0], m[2]);
    return a != b && b != d && a != d;
  }
  for (auto [a, b] : g.edges())
    if (c.color(e.vertex_map[a], e.vertex_map[b]) != *e.color) return false;
  return true;
}

}  // namespace gallai
