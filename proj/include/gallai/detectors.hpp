#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/matcher.hpp"
#include "gallai/pattern.hpp"

namespace gallai {

/// First triangle (u<v<w, lexicographic) whose three edges have distinct
/// colors. Absent exactly when the coloring is a Gallai coloring.
inline std::optional<Embedding> find_rainbow_triangle(const EdgeColoring& c) {
  const std::size_t n = c.order();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const Color a = c.color(u, v);
      for (Vertex w = v + 1; w < n; ++w) {
        const Color b = c.color(v, w);
        if (b == a) continue;
        const Color d = c.color(u, w);
        if (d != a && d != b) return Embedding{PatternSpec::clique(3), std::nullopt, {u, v, w}};
      }
    }
  return std::nullopt;
}

inline bool is_gallai(const EdgeColoring& c) { return !find_rainbow_triangle(c).has_value(); }

/// True iff some vertex has at least two incident edges of color i.
inline bool has_mono_p3_in_color(const EdgeColoring& c, Color i) {
  const std::size_t n = c.order();
  for (Vertex u = 0; u < n; ++u) {
    int deg = 0;
    for (Vertex v = 0; v < n; ++v)
      if (v != u && c.color(u, v) == i && ++deg == 2) return true;
  }
  return false;
}

namespace detail {

using Adjacency = std::vector<VertexSet>;

inline std::optional<std::vector<Vertex>> find_path3(const Adjacency& adj) {
  for (Vertex u = 0; u < adj.size(); ++u)
    if (adj[u].count() >= 2) {
      const auto nb = adj[u].members();
      return std::vector<Vertex>{nb[0], u, nb[1]};
    }
  return std::nullopt;
}

// C4 as (a, c, b, d): a<b sharing two common neighbours c<d.
inline std::optional<std::vector<Vertex>> find_c4(const Adjacency& adj, const VertexSet& within) {
  std::optional<std::vector<Vertex>> hit;
  within.for_each([&](Vertex a) {
    return within.for_each([&](Vertex b) {
      if (b <= a) return false;
      const VertexSet common = adj[a] & adj[b] & within;
      if (common.count() < 2) return false;
      const auto cd = common.members();
      hit = std::vector<Vertex>{a, cd[0], b, cd[1]};
      return true;
    });
  });
  return hit;
}

inline bool extend_clique(const Adjacency& adj, std::vector<Vertex>& chosen, const VertexSet& cand,
                          std::size_t t) {
  if (chosen.size() == t) return true;
  if (chosen.size() + cand.count() < t) return false;
  return cand.for_each([&](Vertex v) {
    VertexSet next = cand & adj[v];
    // only larger ids, so each clique is visited once in lexicographic order
    for (Vertex w = 0; w <= v; ++w) next.erase(w);
    chosen.push_back(v);
    if (extend_clique(adj, chosen, next, t)) return true;
    chosen.pop_back();
    return false;
  });
}

inline std::optional<std::vector<Vertex>> find_clique(const Adjacency& adj, std::size_t t) {
  std::vector<Vertex> chosen;
  if (extend_clique(adj, chosen, VertexSet::full(adj.size()), t)) return chosen;
  return std::nullopt;
}

// For each hub u (ascending), look for a rim cycle inside u's color-i
// neighbourhood. Rim 4 uses the common-neighbour test; longer rims use the
// generic matcher on the neighbourhood.
inline std::optional<std::vector<Vertex>> find_wheel(const Adjacency& adj, std::size_t rim) {
  const SubgraphMatcher<VertexSet> cycle_matcher(PatternSpec::cycle(rim).graph());
  for (Vertex hub = 0; hub < adj.size(); ++hub) {
    const VertexSet& nb = adj[hub];
    if (nb.count() < rim) continue;
    std::optional<std::vector<Vertex>> ring =
        rim == 4 ? find_c4(adj, nb) : cycle_matcher.find(std::span<const VertexSet>(adj), nb);
    if (ring) {
      ring->push_back(hub);
      return ring;
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<Vertex>> find_in_class(const Adjacency& adj, const PatternSpec& p) {
  const std::size_t n = adj.size();
  if (p.order() > n) return std::nullopt;
  switch (p.kind()) {
    case PatternSpec::Kind::Path:
      if (p.parameter() == 3) return find_path3(adj);
      break;
    case PatternSpec::Kind::Cycle:
      if (p.parameter() == 4) return find_c4(adj, VertexSet::full(n));
      break;
    case PatternSpec::Kind::Clique:
      return find_clique(adj, p.parameter());
    case PatternSpec::Kind::Wheel:
      return find_wheel(adj, p.parameter());
    case PatternSpec::Kind::Explicit:
      break;
  }
  const SubgraphMatcher<VertexSet> matcher(p.graph());
  return matcher.find(std::span<const VertexSet>(adj), VertexSet::full(n));
}

}  // namespace detail

/// A monochromatic copy of `p`, in `color` if given, otherwise in the least
/// color 1..k that has one. Exact: absent means no copy exists.
inline std::optional<Embedding> find_mono(const EdgeColoring& c, const PatternSpec& p,
                                          std::optional<Color> color = std::nullopt) {
  if (p.order() > c.order()) return std::nullopt;
  const Color lo = color ? *color : 1;
  const Color hi = color ? *color : c.palette();
  for (Color i = lo; i <= hi; ++i) {
    const auto adj = c.color_neighbourhoods(i);
    if (auto hit = detail::find_in_class(adj, p)) return Embedding{p, i, std::move(*hit)};
  }
  return std::nullopt;
}

/// The common color of every A x B edge, or absent if they differ.
inline std::optional<Color> mono_complete_between(const EdgeColoring& c, std::span<const Vertex> a,
                                                  std::span<const Vertex> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mono_complete_between: empty side");
  detail::check_vertex_list(a, c.order(), "mono_complete_between");
  detail::check_vertex_list(b, c.order(), "mono_complete_between");
  VertexSet in_a(c.order());
  for (auto v : a) in_a.insert(v);
  for (auto v : b)
    if (in_a.contains(v)) throw std::invalid_argument("mono_complete_between: sides overlap");
  const Color first = c.color(a.front(), b.front());
  for (auto u : a)
    for (auto v : b)
      if (c.color(u, v) != first) return std::nullopt;
  return first;
}

/// Given {x,y} complete in color i to A = V \ {x,y}, turns the
/// lexicographically first color-i path (v1,v2,v3) in A into the wheel
/// (v1, x, v3, y; v2). Absent when A has no such path.
inline std::optional<Embedding> wheel_from_mono_pair(const EdgeColoring& c, Vertex x, Vertex y, Color i) {
  const std::size_t n = c.order();
  if (x >= n || y >= n || x == y) throw std::invalid_argument("wheel_from_mono_pair: bad pair");
  for (Vertex a = 0; a < n; ++a) {
    if (a == x || a == y) continue;
    if (c.color(a, x) != i || c.color(a, y) != i)
      throw PreconditionFailed("wheel_from_mono_pair: pair is not complete in the given color");
  }
  auto in_a = [&](Vertex v) { return v != x && v != y; };
  for (Vertex v1 = 0; v1 < n; ++v1) {
    if (!in_a(v1)) continue;
    for (Vertex v2 = 0; v2 < n; ++v2) {
      if (!in_a(v2) || v2 == v1 || c.color(v1, v2) != i) continue;
      for (Vertex v3 = v1 + 1; v3 < n; ++v3)
        if (in_a(v3) && v3 != v2 && c.color(v2, v3) == i)
          return Embedding{PatternSpec::wheel(4), i, {v1, x, v3, y, v2}};
    }
  }
  return std::nullopt;
}

}  // namespace gallai
