#pragma once

#include <bit>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gallai/pattern.hpp"

namespace gallai {

/// Backtracking (non-induced) subgraph matcher over one color class.
///
/// `Set` is any bitset type with operator&, contains(), for_each() and a
/// universe constructor; VertexSet for detectors, a 64-bit mask inside the
/// search kernel. Pattern vertices are placed so that each one after the first
/// has an already-placed neighbour, and candidates are tried in ascending
/// order, so the first embedding returned is deterministic.
template <class Set>
class SubgraphMatcher {
 public:
  /// `anchor` pins pattern edge (first.first, first.second) onto host edge
  /// (second.first, second.second).
  SubgraphMatcher(const SmallGraph& pattern,
                  std::optional<std::pair<std::size_t, std::size_t>> anchored_pattern_edge = std::nullopt)
      : pattern_(pattern) {
    const std::size_t m = pattern.order;
    std::vector<bool> placed(m, false);
    auto place = [&](std::size_t v) {
      order_.push_back(v);
      placed[v] = true;
    };
    if (anchored_pattern_edge) {
      place(anchored_pattern_edge->first);
      place(anchored_pattern_edge->second);
    }
    while (order_.size() < m) {
      std::size_t best = m;
      int best_links = -1, best_deg = -1;
      for (std::size_t v = 0; v < m; ++v) {
        if (placed[v]) continue;
        int links = 0;
        for (auto u : order_) links += pattern.has_edge(u, v) ? 1 : 0;
        const int deg = std::popcount(pattern.adj[v]);
        if (links > best_links || (links == best_links && deg > best_deg)) {
          best = v;
          best_links = links;
          best_deg = deg;
        }
      }
      place(best);
    }
    back_links_.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (pattern.has_edge(order_[i], order_[j])) back_links_[i].push_back(j);
  }

  /// First embedding of the pattern into the graph `adj` restricted to
  /// `allowed`, or nullopt. Result is indexed by pattern vertex.
  std::optional<std::vector<Vertex>> find(std::span<const Set> adj, const Set& allowed) const {
    std::vector<Vertex> slot(order_.size());
    if (order_.empty()) return std::vector<Vertex>{};
    bool found = allowed.for_each([&](Vertex v) {
      slot[0] = v;
      return extend(adj, allowed, slot, 1);
    });
    if (!found) return std::nullopt;
    return unpermute(slot);
  }

  /// As find(), with the first two placed pattern vertices pinned to (a, b).
  /// The caller constructs the matcher with the matching anchored edge.
  std::optional<std::vector<Vertex>> find_anchored(std::span<const Set> adj, const Set& allowed, Vertex a,
                                                   Vertex b) const {
    if (a == b || !allowed.contains(a) || !allowed.contains(b) || !adj[a].contains(b)) return std::nullopt;
    std::vector<Vertex> slot(order_.size());
    slot[0] = a;
    slot[1] = b;
    if (!extend(adj, allowed, slot, 2)) return std::nullopt;
    return unpermute(slot);
  }

 private:
  bool extend(std::span<const Set> adj, const Set& allowed, std::vector<Vertex>& slot, std::size_t i) const {
    if (i == order_.size()) return true;
    Set cand = allowed;
    for (auto j : back_links_[i]) cand &= adj[slot[j]];
    for (std::size_t j = 0; j < i; ++j) cand.erase(slot[j]);
    return cand.for_each([&](Vertex v) {
      slot[i] = v;
      return extend(adj, allowed, slot, i + 1);
    });
  }

  std::vector<Vertex> unpermute(const std::vector<Vertex>& slot) const {
    std::vector<Vertex> out(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) out[order_[i]] = slot[i];
    return out;
  }

  SmallGraph pattern_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> back_links_;
};

}  // namespace gallai
