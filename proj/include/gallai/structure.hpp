#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/detectors.hpp"

namespace gallai {

using VertexList = std::vector<Vertex>;

/// Parts V_1..V_p of a Gallai partition with the cross colors and the
/// reduced coloring on p vertices (vertex i stands for part i).
struct GallaiPartition {
  std::vector<VertexList> parts;
  std::vector<Color> cross_colors;
  EdgeColoring reduced;
};

struct PartitionReport {
  bool ok = true;
  std::vector<Color> cross_colors;
  std::vector<std::string> violations;
};

namespace detail {

inline void check_cover(const EdgeColoring& c, std::span<const VertexList> parts) {
  std::vector<int> owner(c.order(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw std::invalid_argument("partition: empty part");
    for (auto v : parts[i]) {
      if (v >= c.order()) throw std::invalid_argument("partition: vertex out of range");
      if (owner[v] != -1) throw std::invalid_argument("partition: parts overlap");
      owner[v] = static_cast<int>(i);
    }
  }
  for (auto o : owner)
    if (o == -1) throw std::invalid_argument("partition: parts do not cover every vertex");
}

// Parts by decreasing size, ties by least vertex; members ascending.
inline void normalise_parts(std::vector<VertexList>& parts) {
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end(), [](const VertexList& a, const VertexList& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
}

}  // namespace detail

/// Checks the partition's defining properties against c: at least two parts,
/// one color between every pair of parts, at most two cross colors overall.
/// Throws std::invalid_argument if the parts are not a partition of V.
inline PartitionReport check_partition(const EdgeColoring& c, std::span<const VertexList> parts) {
  detail::check_cover(c, parts);
  PartitionReport r;
  if (parts.size() < 2) {
    r.ok = false;
    r.violations.push_back("fewer than two parts");
  }
  std::vector<bool> seen(kMaxColors + 1, false);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto col = mono_complete_between(c, parts[i], parts[j]);
      if (!col) {
        r.ok = false;
        r.violations.push_back("parts " + std::to_string(i) + " and " + std::to_string(j) +
                               " are joined by more than one color");
        for (auto u : parts[i])
          for (auto v : parts[j]) seen[c.color(u, v)] = true;
      } else {
        seen[*col] = true;
      }
    }
  for (Color col = 1; col <= kMaxColors; ++col)
    if (seen[col]) r.cross_colors.push_back(col);
  if (r.cross_colors.size() > 2) {
    r.ok = false;
    r.violations.push_back(std::to_string(r.cross_colors.size()) + " colors used between parts");
  }
  return r;
}

/// Full check of a GallaiPartition object, including that its recorded cross
/// colors and reduced coloring agree with c.
inline PartitionReport verify_gallai_partition(const EdgeColoring& c, const GallaiPartition& p) {
  auto r = check_partition(c, p.parts);
  if (p.cross_colors != r.cross_colors) {
    r.ok = false;
    r.violations.push_back("recorded cross colors differ from the coloring");
  }
  if (p.reduced.order() != p.parts.size()) {
    r.ok = false;
    r.violations.push_back("reduced coloring has the wrong order");
    return r;
  }
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    for (std::size_t j = i + 1; j < p.parts.size(); ++j)
      if (p.reduced.color(i, j) != c.color(p.parts[i].front(), p.parts[j].front())) {
        r.ok = false;
        r.violations.push_back("reduced edge " + std::to_string(i) + "-" + std::to_string(j) +
                               " differs from the cross color");
        return r;
      }
  return r;
}

/// Assembles a GallaiPartition (cross colors, reduced coloring) from parts
/// whose pairs are each monochromatic. The parts are kept in the given order.
inline GallaiPartition make_partition(const EdgeColoring& c, std::vector<VertexList> parts) {
  detail::check_cover(c, parts);
  GallaiPartition gp;
  gp.reduced = EdgeColoring(parts.size(), c.palette());
  std::vector<bool> seen(kMaxColors + 1, false);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto col = mono_complete_between(c, parts[i], parts[j]);
      if (!col) throw std::invalid_argument("make_partition: a pair of parts is not monochromatic");
      gp.reduced.set_color(i, j, *col);
      seen[*col] = true;
    }
  for (Color col = 1; col <= kMaxColors; ++col)
    if (seen[col]) gp.cross_colors.push_back(col);
  gp.parts = std::move(parts);
  return gp;
}

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Groups after taking components of the edges colored outside {a, b} and
// merging any two groups joined by both a and b, until every pair of groups
// is monochromatic.
inline std::vector<VertexList> partition_for_pair(const EdgeColoring& c, Color a, Color b) {
  const std::size_t n = c.order();
  DisjointSets ds(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const Color col = c.color(u, v);
      if (col != a && col != b) ds.unite(u, v);
    }
  for (bool changed = true; changed;) {
    changed = false;
    // first color seen between each pair of current roots
    std::vector<Color> between(n * n, kUnassigned);
    for (Vertex u = 0; u < n && !changed; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        const std::size_t ru = ds.find(u), rv = ds.find(v);
        if (ru == rv) continue;
        Color& slot = between[std::min(ru, rv) * n + std::max(ru, rv)];
        const Color col = c.color(u, v);
        if (slot == kUnassigned) {
          slot = col;
        } else if (slot != col) {
          ds.unite(ru, rv);
          changed = true;
          break;
        }
      }
  }
  std::vector<VertexList> groups(n);
  for (Vertex v = 0; v < n; ++v) groups[ds.find(v)].push_back(v);
  std::erase_if(groups, [](const VertexList& g) { return g.empty(); });
  return groups;
}

}  // namespace detail

/// A Gallai partition of a Gallai coloring, not necessarily the coarsest.
///
/// Colorings using at most two colors get the all-singletons partition.
/// Otherwise, for each color pair {a, b} in lexicographic order, the
/// components of the edges colored outside {a, b} are merged until every pair
/// of groups is monochromatic; the first pair leaving at least two groups
/// wins. Every Gallai partition with cross colors inside {a, b} is a
/// coarsening of that grouping, so some pair always succeeds.
inline GallaiPartition find_gallai_partition(const EdgeColoring& c) {
  if (c.order() < 2) throw std::invalid_argument("find_gallai_partition: need at least 2 vertices");
  if (auto rt = find_rainbow_triangle(c))
    throw PreconditionFailed("find_gallai_partition: coloring has a rainbow triangle");
  const auto used = colors_used(c);
  std::vector<VertexList> parts;
  if (used.size() <= 2) {
    for (Vertex v = 0; v < c.order(); ++v) parts.push_back({v});
  } else {
    for (std::size_t i = 0; i < used.size() && parts.empty(); ++i)
      for (std::size_t j = i + 1; j < used.size(); ++j) {
        auto groups = detail::partition_for_pair(c, used[i], used[j]);
        if (groups.size() >= 2) {
          parts = std::move(groups);
          break;
        }
      }
    if (parts.empty()) throw std::logic_error("find_gallai_partition: no partition found");
  }
  detail::normalise_parts(parts);
  auto gp = make_partition(c, std::move(parts));
  if (!verify_gallai_partition(c, gp).ok) throw std::logic_error("find_gallai_partition: produced an invalid partition");
  return gp;
}

/// K_p whose edge (i, j) carries the cross color between parts i and j.
inline EdgeColoring reduced_graph(const EdgeColoring& c, const GallaiPartition& p) {
  const auto report = verify_gallai_partition(c, p);
  if (!report.ok) throw std::invalid_argument("reduced_graph: " + report.violations.front());
  return p.reduced;
}

/// x_1..x_m with x_j monochromatic-complete to V \ {x_1..x_j}, and what is
/// left over.
struct ApexSequence {
  std::vector<std::pair<Vertex, Color>> entries;
  VertexList remainder;
};

namespace detail {

// Color v sends to every other vertex of `rest`, if it is a single color.
inline std::optional<Color> apex_color(const EdgeColoring& c, Vertex v, const VertexSet& rest) {
  std::optional<Color> col;
  bool mono = true;
  rest.for_each([&](Vertex w) {
    if (w == v) return false;
    const Color x = c.color(v, w);
    if (!col) col = x;
    else if (*col != x) mono = false;
    return !mono;
  });
  return mono ? col : std::nullopt;
}

}  // namespace detail

/// Greedily peels the least-indexed vertex that is monochromatic-complete to
/// the rest of the remaining set, until none qualifies or one vertex is left.
inline ApexSequence peel_apex_sequence(const EdgeColoring& c) {
  ApexSequence s;
  VertexSet rest = VertexSet::full(c.order());
  while (rest.count() > 1) {
    std::optional<std::pair<Vertex, Color>> pick;
    rest.for_each([&](Vertex v) {
      if (auto col = detail::apex_color(c, v, rest)) {
        pick = std::make_pair(v, *col);
        return true;
      }
      return false;
    });
    if (!pick) break;
    s.entries.push_back(*pick);
    rest.erase(pick->first);
  }
  s.remainder = rest.members();
  return s;
}

/// Re-checks both sequence invariants (each apex condition and maximality of
/// the remainder).
inline bool apex_sequence_valid(const EdgeColoring& c, const ApexSequence& s) {
  VertexSet rest = VertexSet::full(c.order());
  for (auto [v, col] : s.entries) {
    if (v >= c.order() || !rest.contains(v)) return false;
    if (detail::apex_color(c, v, rest) != std::optional<Color>(col)) return false;
    rest.erase(v);
  }
  if (rest.members() != s.remainder) return false;
  if (rest.count() <= 1) return true;
  return !rest.for_each([&](Vertex v) { return detail::apex_color(c, v, rest).has_value(); });
}

/// Executable contrapositive of apex color distinctness: whenever two peeled
/// vertices x_i, x_j (i < j) share color col, either A = V \ {x_1..x_j} has no
/// col-colored P_3 or c contains a monochromatic W_4 in col.
inline bool check_apex_color_distinctness(const EdgeColoring& c, const ApexSequence& s) {
  VertexSet peeled(c.order());
  for (auto [v, col] : s.entries) {
    if (v >= c.order() || peeled.contains(v)) throw std::invalid_argument("apex sequence does not match coloring");
    const VertexSet rest = VertexSet::full(c.order()) - peeled;
    if (detail::apex_color(c, v, rest) != std::optional<Color>(col))
      throw std::invalid_argument("apex sequence does not match coloring");
    peeled.insert(v);
  }
  for (std::size_t j = 0; j < s.entries.size(); ++j) {
    const Color col = s.entries[j].second;
    bool repeated = false;
    for (std::size_t i = 0; i < j; ++i) repeated = repeated || s.entries[i].second == col;
    if (!repeated) continue;
    VertexSet a = VertexSet::full(c.order());
    for (std::size_t t = 0; t <= j; ++t) a.erase(s.entries[t].first);
    if (a.empty()) continue;
    if (has_mono_p3_in_color(restrict(c, a), col) && !find_mono(c, PatternSpec::wheel(4), col)) return false;
  }
  return true;
}

/// Splits V \ V1 by how each vertex sees V1: entirely `blue`, entirely `red`,
/// or neither.
struct CrossProfile {
  VertexList blue_complete;
  VertexList red_complete;
  VertexList other;
};

inline CrossProfile cross_color_profile(const EdgeColoring& c, std::span<const Vertex> v1, Color red, Color blue) {
  if (v1.empty()) throw std::invalid_argument("cross_color_profile: empty V1");
  detail::check_vertex_list(v1, c.order(), "cross_color_profile");
  VertexSet in_v1(c.order());
  for (auto v : v1) in_v1.insert(v);
  CrossProfile out;
  for (Vertex v = 0; v < c.order(); ++v) {
    if (in_v1.contains(v)) continue;
    const Vertex one[] = {v};
    const auto col = mono_complete_between(c, one, v1);
    if (col == blue) out.blue_complete.push_back(v);
    else if (col == red) out.red_complete.push_back(v);
    else out.other.push_back(v);
  }
  return out;
}

}  // namespace gallai
