#pragma once

// Independent reference implementations used only by the tests. None of these
// share code paths with the library beyond EdgeColoring accessors.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gallai/gallai.hpp"

namespace oracle {

using gallai::Color;
using gallai::EdgeColoring;
using gallai::Vertex;

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList wheel_edges(int rim) {
  EdgeList e;
  for (int i = 0; i < rim; ++i) {
    e.push_back({i, (i + 1) % rim});
    e.push_back({i, rim});
  }
  return e;
}

inline EdgeList path_edges(int vertices) {
  EdgeList e;
  for (int i = 0; i + 1 < vertices; ++i) e.push_back({i, i + 1});
  return e;
}

inline EdgeList cycle_edges(int len) {
  EdgeList e = path_edges(len);
  e.push_back({len - 1, 0});
  return e;
}

inline EdgeList clique_edges(int t) {
  EdgeList e;
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) e.push_back({i, j});
  return e;
}

// Tries every ordered tuple of distinct host vertices, extending one slot at a
// time and rejecting as soon as an edge between filled slots has the wrong
// color.
inline bool place(const EdgeColoring& c, const EdgeList& edges, int order, Color col, std::vector<Vertex>& slot,
                  std::vector<bool>& used) {
  const int i = static_cast<int>(slot.size());
  if (i == order) return true;
  for (Vertex v = 0; v < c.order(); ++v) {
    if (used[v]) continue;
    bool ok = true;
    for (auto [a, b] : edges) {
      int other = -1;
      if (a == i && b < i) other = b;
      if (b == i && a < i) other = a;
      if (other >= 0 && c.color(slot[other], v) != col) ok = false;
    }
    if (!ok) continue;
    slot.push_back(v);
    used[v] = true;
    if (place(c, edges, order, col, slot, used)) return true;
    slot.pop_back();
    used[v] = false;
  }
  return false;
}

inline bool has_mono(const EdgeColoring& c, const EdgeList& edges, int order, Color col) {
  std::vector<Vertex> slot;
  std::vector<bool> used(c.order(), false);
  return place(c, edges, order, col, slot, used);
}

inline bool has_rainbow_triangle(const EdgeColoring& c) {
  for (Vertex a = 0; a < c.order(); ++a)
    for (Vertex b = a + 1; b < c.order(); ++b)
      for (Vertex d = b + 1; d < c.order(); ++d) {
        const Color x = c.color(a, b), y = c.color(a, d), z = c.color(b, d);
        if (x != y && x != z && y != z) return true;
      }
  return false;
}

// FNV-1a 64 over the documented byte stream.
inline std::string digest(const EdgeColoring& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto byte = [&](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (char ch : std::string("gallai-coloring-v1")) byte(static_cast<unsigned char>(ch));
  byte(0);
  for (std::uint64_t x : {static_cast<std::uint64_t>(c.order()), static_cast<std::uint64_t>(c.palette())})
    for (int s = 0; s < 64; s += 8) byte(static_cast<unsigned char>(x >> s));
  for (Vertex u = 0; u < c.order(); ++u)
    for (Vertex v = u + 1; v < c.order(); ++v) byte(static_cast<unsigned char>(c.color(u, v)));
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 15];
  return out;
}

// f(2) = coeff, then alternately double (odd s) and multiply the value two
// steps back by five (even s).
inline std::uint64_t schedule(unsigned s, std::uint64_t coeff = 14) {
  if (s == 2) return coeff;
  if (s == 3) return 2 * coeff;
  return 5 * schedule(s - 2, coeff);
}

// Every 2-coloring of K_6, decoded from a 15-bit word, has a monochromatic
// triangle.
inline bool every_two_coloring_of_k6_has_mono_triangle() {
  for (std::uint32_t word = 0; word < (1U << 15); ++word) {
    int col[6][6] = {};
    int bit = 0;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v) col[u][v] = col[v][u] = (word >> bit++) & 1;
    bool mono = false;
    for (int a = 0; a < 6 && !mono; ++a)
      for (int b = a + 1; b < 6 && !mono; ++b)
        for (int d = b + 1; d < 6 && !mono; ++d) mono = col[a][b] == col[a][d] && col[a][b] == col[b][d];
    if (!mono) return false;
  }
  return true;
}

// Partition properties checked pair by pair, edge by edge.
inline bool is_gallai_partition(const EdgeColoring& c, const std::vector<std::vector<Vertex>>& parts) {
  if (parts.size() < 2) return false;
  std::vector<int> owner(c.order(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (auto v : parts[i]) {
      if (owner[v] != -1) return false;
      owner[v] = static_cast<int>(i);
    }
  for (auto o : owner)
    if (o < 0) return false;
  std::vector<Color> cross;
  for (Vertex u = 0; u < c.order(); ++u)
    for (Vertex v = u + 1; v < c.order(); ++v) {
      if (owner[u] == owner[v]) continue;
      const Color col = c.color(u, v);
      const Vertex ru = parts[owner[u]].front(), rv = parts[owner[v]].front();
      if (c.color(ru, rv) != col) return false;
      bool seen = false;
      for (auto x : cross) seen = seen || x == col;
      if (!seen) cross.push_back(col);
    }
  return cross.size() <= 2;
}

}  // namespace oracle
