#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gallai/vertex_set.hpp"

namespace gallai {

/// Edge color id. Valid colors are 1..k; 0 means "unassigned" and only
/// appears inside the search kernel.
using Color = int;

inline constexpr Color kUnassigned = 0;
inline constexpr Color kMaxColors = 255;

/// Raised when an operation's documented precondition on its input coloring
/// does not hold (as opposed to a malformed argument).
class PreconditionFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A complete graph on n vertices with every edge colored from 1..k.
///
/// Storage is a flat row-major upper triangle: (0,1),(0,2),...,(0,n-1),(1,2),...
/// which is also the order of the text file format and of the digest.
class EdgeColoring {
 public:
  EdgeColoring() = default;

  /// K_n with every edge set to `fill`.
  EdgeColoring(std::size_t n, Color k, Color fill = 1) : n_(n), k_(k) {
    if (k < 1 || k > kMaxColors) throw std::invalid_argument("palette size out of range");
    if (n >= 2 && (fill < 1 || fill > k)) throw std::invalid_argument("fill color outside palette");
    colors_.assign(edge_count(n), static_cast<std::uint8_t>(fill));
  }

  /// Builds from row-major upper-triangle colors.
  static EdgeColoring from_upper_triangle(std::size_t n, Color k, std::span<const Color> colors) {
    if (colors.size() != edge_count(n)) throw std::invalid_argument("edge color count mismatch");
    EdgeColoring c(n, k);
    for (std::size_t e = 0; e < colors.size(); ++e) {
      if (colors[e] < 1 || colors[e] > k) throw std::invalid_argument("edge color outside palette");
      c.colors_[e] = static_cast<std::uint8_t>(colors[e]);
    }
    return c;
  }

  static constexpr std::size_t edge_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

  std::size_t order() const noexcept { return n_; }
  Color palette() const noexcept { return k_; }
  std::size_t size() const noexcept { return colors_.size(); }

  /// Index of {u,v} in the upper-triangle array. Requires u != v.
  std::size_t edge_index(Vertex u, Vertex v) const noexcept {
    if (u > v) std::swap(u, v);
    return u * (2 * n_ - u - 1) / 2 + (v - u - 1);
  }

  Color color(Vertex u, Vertex v) const noexcept { return colors_[edge_index(u, v)]; }
  Color color_at(std::size_t edge) const noexcept { return colors_[edge]; }

  void set_color(Vertex u, Vertex v, Color c) {
    if (u == v || u >= n_ || v >= n_) throw std::invalid_argument("bad edge");
    if (c < 1 || c > k_) throw std::invalid_argument("edge color outside palette");
    colors_[edge_index(u, v)] = static_cast<std::uint8_t>(c);
  }

  /// Widens the declared palette; colors in use are unaffected.
  void set_palette(Color k) {
    if (k < 1 || k > kMaxColors) throw std::invalid_argument("palette size out of range");
    for (auto c : colors_)
      if (c > k) throw std::invalid_argument("palette would exclude a used color");
    k_ = k;
  }

  /// Color-c neighbourhood of every vertex.
  std::vector<VertexSet> color_neighbourhoods(Color c) const {
    std::vector<VertexSet> adj(n_, VertexSet(n_));
    std::size_t e = 0;
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v, ++e)
        if (colors_[e] == c) {
          adj[u].insert(v);
          adj[v].insert(u);
        }
    return adj;
  }

  friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

 private:
  std::size_t n_ = 0;
  Color k_ = 1;
  std::vector<std::uint8_t> colors_;
};

/// Exact set of colors appearing on at least one edge, ascending.
inline std::vector<Color> colors_used(const EdgeColoring& c) {
  bool seen[kMaxColors + 1] = {};
  for (std::size_t e = 0; e < c.size(); ++e) seen[c.color_at(e)] = true;
  std::vector<Color> out;
  for (Color i = 1; i <= kMaxColors; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

namespace detail {

inline void check_vertex_list(std::span<const Vertex> vs, std::size_t n, const char* what) {
  for (auto v : vs)
    if (v >= n) throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

}  // namespace detail

/// Induced coloring on S, relabelled 0..|S|-1 in ascending original order.
inline EdgeColoring restrict(const EdgeColoring& c, std::span<const Vertex> subset) {
  if (subset.empty()) throw std::invalid_argument("restrict: empty vertex set");
  detail::check_vertex_list(subset, c.order(), "restrict");
  std::vector<Vertex> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("restrict: repeated vertex");
  EdgeColoring out(s.size(), c.palette());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) out.set_color(i, j, c.color(s[i], s[j]));
  return out;
}

inline EdgeColoring restrict(const EdgeColoring& c, const VertexSet& subset) {
  const auto m = subset.members();
  return restrict(c, std::span<const Vertex>(m));
}

/// Blow-up: vertex i of `quotient` is replaced by a copy of parts[i]; edges
/// between blocks i and j take quotient.color(i, j). Parts occupy consecutive
/// vertex ranges in order.
///
/// With `strict`, quotient colors must not occur inside any part.
inline EdgeColoring substitute(const EdgeColoring& quotient, std::span<const EdgeColoring> parts,
                               bool strict = false) {
  if (parts.size() != quotient.order())
    throw std::invalid_argument("substitute: part count must equal quotient order");
  if (strict) {
    const auto qc = colors_used(quotient);
    for (const auto& p : parts)
      for (auto c : colors_used(p))
        if (std::binary_search(qc.begin(), qc.end(), c))
          throw std::invalid_argument("substitute: quotient color reused inside a part");
  }
  std::vector<std::size_t> offset(parts.size() + 1, 0);
  Color k = quotient.palette();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offset[i + 1] = offset[i] + parts[i].order();
    k = std::max(k, parts[i].palette());
  }
  const std::size_t n = offset.back();
  EdgeColoring out(n, k);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    for (Vertex u = 0; u < p.order(); ++u)
      for (Vertex v = u + 1; v < p.order(); ++v) out.set_color(offset[i] + u, offset[i] + v, p.color(u, v));
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const Color q = quotient.color(i, j);
      for (Vertex u = offset[i]; u < offset[i + 1]; ++u)
        for (Vertex v = offset[j]; v < offset[j + 1]; ++v) out.set_color(u, v, q);
    }
  }
  return out;
}

/// Disjoint union of a and b with every cross edge in the fresh color.
inline EdgeColoring join(const EdgeColoring& a, const EdgeColoring& b, Color fresh) {
  if (fresh < 1 || fresh > kMaxColors) throw std::invalid_argument("join: color out of range");
  for (const auto* side : {&a, &b}) {
    const auto used = colors_used(*side);
    if (std::binary_search(used.begin(), used.end(), fresh))
      throw std::invalid_argument("join: cross color already used inside an operand");
  }
  EdgeColoring quotient(2, fresh, fresh);
  const EdgeColoring parts[] = {a, b};
  return substitute(quotient, parts);
}

/// Applies `map` (indexed by old color, entries for unused colors ignored) to
/// every edge. The palette becomes `k`.
inline EdgeColoring recolor(const EdgeColoring& c, std::span<const Color> map, Color k) {
  EdgeColoring out(c.order(), k);
  for (Vertex u = 0; u < c.order(); ++u)
    for (Vertex v = u + 1; v < c.order(); ++v) out.set_color(u, v, map[c.color(u, v)]);
  return out;
}

/// Stable identity of a labelled coloring: 64-bit FNV-1a over
///   "gallai-coloring-v1" NUL, n as u64 LE, k as u64 LE, then one byte per
///   edge color in row-major upper-triangle order,
/// rendered as 16 lowercase hex digits. Vertex order and color ids matter.
inline std::string canonical_digest(const EdgeColoring& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (char ch : std::string_view("gallai-coloring-v1")) feed(static_cast<std::uint8_t>(ch));
  feed(0);
  for (std::uint64_t x : {static_cast<std::uint64_t>(c.order()), static_cast<std::uint64_t>(c.palette())})
    for (int i = 0; i < 8; ++i) feed(static_cast<std::uint8_t>(x >> (8 * i)));
  for (std::size_t e = 0; e < c.size(); ++e) feed(static_cast<std::uint8_t>(c.color_at(e)));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gallai
