#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/constructions.hpp"
#include "gallai/detectors.hpp"
#include "gallai/matcher.hpp"
#include "gallai/pattern.hpp"

namespace gallai {

/// 64-bit vertex mask with the subset of the VertexSet interface the matcher
/// uses. The search kernel is limited to 64 vertices.
struct Mask64 {
  std::uint64_t bits = 0;

  Mask64() = default;
  explicit Mask64(std::size_t) {}
  static Mask64 full(std::size_t n) {
    Mask64 m;
    m.bits = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return m;
  }

  void insert(Vertex v) noexcept { bits |= std::uint64_t{1} << v; }
  void erase(Vertex v) noexcept { bits &= ~(std::uint64_t{1} << v); }
  bool contains(Vertex v) const noexcept { return (bits >> v) & 1U; }
  bool empty() const noexcept { return bits == 0; }
  std::size_t count() const noexcept { return static_cast<std::size_t>(std::popcount(bits)); }
  Mask64& operator&=(const Mask64& o) noexcept {
    bits &= o.bits;
    return *this;
  }
  friend Mask64 operator&(Mask64 a, const Mask64& b) noexcept { return a &= b; }

  template <class F>
  bool for_each(F&& f) const {
    std::uint64_t w = bits;
    while (w) {
      const Vertex v = static_cast<Vertex>(std::countr_zero(w));
      w &= w - 1;
      if (f(v)) return true;
    }
    return false;
  }
};

inline constexpr std::size_t kMaxSearchOrder = 64;

/// An edge coloring of K_n under construction; color 0 means unassigned.
class PartialColoring {
 public:
  PartialColoring(std::size_t n, Color k) : n_(n), k_(k), mat_(n * n, kUnassigned), adj_(k + 1) {
    if (n > kMaxSearchOrder) throw std::invalid_argument("search is limited to 64 vertices");
    if (k < 1 || k > kMaxColors) throw std::invalid_argument("bad palette");
    for (auto& a : adj_) a.assign(n, Mask64{});
  }

  std::size_t order() const noexcept { return n_; }
  Color palette() const noexcept { return k_; }
  Color color(Vertex u, Vertex v) const noexcept { return mat_[u * n_ + v]; }

  void assign(Vertex u, Vertex v, Color c) {
    mat_[u * n_ + v] = mat_[v * n_ + u] = static_cast<std::uint8_t>(c);
    adj_[c][u].insert(v);
    adj_[c][v].insert(u);
    assigned_[u].insert(v);
    assigned_[v].insert(u);
  }
  void unassign(Vertex u, Vertex v) {
    const Color c = color(u, v);
    if (c == kUnassigned) return;
    mat_[u * n_ + v] = mat_[v * n_ + u] = kUnassigned;
    adj_[c][u].erase(v);
    adj_[c][v].erase(u);
    assigned_[u].erase(v);
    assigned_[v].erase(u);
  }

  std::span<const Mask64> neighbours(Color c) const { return adj_[c]; }
  Mask64 assigned_neighbours(Vertex u) const { return assigned_[u]; }

  /// Requires every edge to be assigned.
  EdgeColoring to_coloring() const {
    EdgeColoring out(n_, k_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v) out.set_color(u, v, color(u, v));
    return out;
  }

 private:
  std::size_t n_;
  Color k_;
  std::vector<std::uint8_t> mat_;
  std::vector<std::vector<Mask64>> adj_;
  std::array<Mask64, kMaxSearchOrder> assigned_{};
};

/// A pattern that must not appear monochromatically, in one color or in
/// every color.
struct ForbiddenPattern {
  PatternSpec pattern;
  std::optional<Color> color;
};

enum class SymmetryLevel {
  None,
  /// Interchangeable colors must first appear in ascending id order.
  ColorSwap,
  /// ColorSwap plus lex-leader constraints for every adjacent vertex
  /// transposition. Sound: the lexicographically least member of each orbit
  /// satisfies all of them.
  VertexOrder,
};

struct SearchTask {
  std::size_t n = 1;
  Color k = 1;
  std::vector<ForbiddenPattern> forbidden;
  bool forbid_rainbow_triangle = false;
  SymmetryLevel symmetry = SymmetryLevel::ColorSwap;
  std::uint64_t node_limit = 1'000'000'000;
  std::uint64_t seed = 0;
  /// Node budget of the first attempt; each restart doubles it.
  std::uint64_t restart_base = 1 << 20;
};

enum class SearchStatus { Witness, Exhausted, LimitReached };

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::uint64_t restarts = 0;
  double elapsed_seconds = 0;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::LimitReached;
  std::optional<EdgeColoring> witness;
  SearchStats stats;
};

/// Task constraints prepared for the incremental check: for each forbidden
/// pattern, one anchored matcher per edge orbit of the pattern.
class CompiledConstraints {
 public:
  explicit CompiledConstraints(const SearchTask& t) : k_(t.k), rainbow_(t.forbid_rainbow_triangle) {
    for (const auto& f : t.forbidden) {
      if (f.color && (*f.color < 1 || *f.color > t.k)) throw std::invalid_argument("forbidden color outside palette");
      Entry e{f.color, f.pattern.order(), {}};
      const auto g = f.pattern.graph();
      for (auto [a, b] : edge_orbit_representatives(g)) e.matchers.emplace_back(g, std::make_pair(a, b));
      entries_.push_back(std::move(e));
    }
  }

  bool forbids_rainbow() const noexcept { return rainbow_; }

  /// Colors grouped by identical constraint sets; only colors within a group
  /// are interchangeable.
  std::vector<std::vector<Color>> interchangeable_groups() const {
    std::vector<std::vector<Color>> groups;
    std::vector<std::vector<std::size_t>> signatures;
    for (Color c = 1; c <= k_; ++c) {
      std::vector<std::size_t> sig;
      for (std::size_t i = 0; i < entries_.size(); ++i)
        if (!entries_[i].color || *entries_[i].color == c) sig.push_back(i);
      auto it = std::find(signatures.begin(), signatures.end(), sig);
      if (it == signatures.end()) {
        signatures.push_back(sig);
        groups.push_back({c});
      } else {
        groups[static_cast<std::size_t>(it - signatures.begin())].push_back(c);
      }
    }
    return groups;
  }

  /// True iff the assigned edge (u, v) lies in a forbidden monochromatic copy
  /// or a rainbow triangle using only assigned edges.
  bool conflict(const PartialColoring& pc, Vertex u, Vertex v) const {
    const Color c = pc.color(u, v);
    if (c == kUnassigned) return false;
    const auto all = Mask64::full(pc.order());
    for (const auto& e : entries_) {
      if ((e.color && *e.color != c) || e.order > pc.order()) continue;
      const auto adj = pc.neighbours(c);
      for (const auto& m : e.matchers)
        if (m.find_anchored(adj, all, u, v) || m.find_anchored(adj, all, v, u)) return true;
    }
    if (rainbow_) {
      const Mask64 both = pc.assigned_neighbours(u) & pc.assigned_neighbours(v);
      if (both.for_each([&](Vertex w) {
            const Color a = pc.color(u, w), b = pc.color(v, w);
            return a != b && a != c && b != c;
          }))
        return true;
    }
    return false;
  }

 private:
  struct Entry {
    std::optional<Color> color;
    std::size_t order;
    std::vector<SubgraphMatcher<Mask64>> matchers;
  };

  // Orbits of edges under the pattern's automorphisms (brute force up to 8
  // vertices; larger patterns keep every edge).
  static std::vector<std::pair<std::size_t, std::size_t>> edge_orbit_representatives(const SmallGraph& g) {
    auto edges = g.edges();
    if (g.order > 8) return edges;
    std::vector<std::size_t> perm(g.order);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> autos;
    do {
      bool ok = true;
      for (auto [a, b] : edges)
        if (!g.has_edge(perm[a], perm[b])) {
          ok = false;
          break;
        }
      if (ok) autos.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::pair<std::size_t, std::size_t>> reps;
    std::vector<bool> covered(edges.size(), false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (covered[i]) continue;
      reps.push_back(edges[i]);
      for (const auto& p : autos) {
        auto a = p[edges[i].first], b = p[edges[i].second];
        if (a > b) std::swap(a, b);
        for (std::size_t j = 0; j < edges.size(); ++j)
          if (edges[j] == std::make_pair(a, b)) covered[j] = true;
      }
    }
    return reps;
  }

  Color k_;
  bool rainbow_;
  std::vector<Entry> entries_;
};

/// Incremental conflict test for the search kernel; see
/// CompiledConstraints::conflict.
inline bool incremental_conflict(const PartialColoring& pc, Vertex u, Vertex v, const CompiledConstraints& rules) {
  return rules.conflict(pc, u, v);
}

namespace detail {

// Edges in column order (0,1),(0,2),(1,2),(0,3),...: every prefix of the
// order covers a complete subgraph before a new vertex is touched.
inline std::vector<std::pair<Vertex, Vertex>> search_edge_order(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) out.emplace_back(u, v);
  return out;
}

class SearchKernel {
 public:
  SearchKernel(const SearchTask& task, const CompiledConstraints& rules, std::vector<std::vector<Color>> value_order)
      : task_(task), rules_(rules), edges_(search_edge_order(task.n)), value_order_(std::move(value_order)) {
    prev_in_group_.assign(task.k + 1, kUnassigned);
    if (task.symmetry != SymmetryLevel::None) {
      const auto groups = rules.interchangeable_groups();
      for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t i = 0; i < groups[g].size(); ++i) {
          if (i > 0) prev_in_group_[groups[g][i]] = groups[g][i - 1];
        }
    }
  }

  std::size_t edge_count() const noexcept { return edges_.size(); }

  struct State {
    PartialColoring pc;
    std::vector<std::uint32_t> use_count;
    std::size_t depth = 0;
  };

  State initial_state() const {
    return State{PartialColoring(task_.n, task_.k), std::vector<std::uint32_t>(task_.k + 1, 0), 0};
  }

  // Tries color c on the next edge; on success the state is advanced.
  bool try_assign(State& s, Color c, std::uint64_t& prunes) const {
    if (prev_in_group_[c] != kUnassigned && s.use_count[prev_in_group_[c]] == 0) return false;
    const auto [u, v] = edges_[s.depth];
    s.pc.assign(u, v, c);
    ++s.use_count[c];
    if (rules_.conflict(s.pc, u, v) || (task_.symmetry == SymmetryLevel::VertexOrder && !lex_leader_ok(s.pc))) {
      s.pc.unassign(u, v);
      --s.use_count[c];
      ++prunes;
      return false;
    }
    ++s.depth;
    return true;
  }

  void undo(State& s) const {
    --s.depth;
    const auto [u, v] = edges_[s.depth];
    --s.use_count[s.pc.color(u, v)];
    s.pc.unassign(u, v);
  }

  const std::vector<Color>& values_for(std::size_t depth) const { return value_order_[depth]; }

  enum class Result { Found, Exhausted, Capped, Cancelled };

  // Depth-first completion of `s`. `nodes` counts every attempted
  // assignment; stops once it reaches `cap`.
  template <class CancelFn>
  Result complete(State& s, std::uint64_t cap, std::uint64_t& nodes, std::uint64_t& prunes,
                  CancelFn&& cancelled) const {
    if (s.depth == edges_.size()) return Result::Found;
    if ((nodes & 0xfff) == 0 && cancelled()) return Result::Cancelled;
    for (Color c : values_for(s.depth)) {
      if (nodes >= cap) return Result::Capped;
      ++nodes;
      if (!try_assign(s, c, prunes)) continue;
      const auto r = complete(s, cap, nodes, prunes, cancelled);
      if (r != Result::Exhausted) return r;
      undo(s);
    }
    return Result::Exhausted;
  }

 private:
  // X <= X∘(i i+1) in column order for every adjacent transposition, decided
  // on the first differing pair of assigned edges.
  bool lex_leader_ok(const PartialColoring& pc) const {
    const std::size_t n = pc.order();
    for (Vertex i = 0; i + 1 < n; ++i) {
      auto cmp = [&](Vertex a1, Vertex b1, Vertex a2, Vertex b2) -> int {
        const Color x = pc.color(a1, b1), y = pc.color(a2, b2);
        if (x == kUnassigned || y == kUnassigned) return 2;
        return x < y ? -1 : (x > y ? 1 : 0);
      };
      int verdict = 0;
      for (Vertex w = 0; w < i && verdict == 0; ++w) verdict = cmp(w, i, w, i + 1);
      for (Vertex w = i + 2; w < n && verdict == 0; ++w) verdict = cmp(i, w, i + 1, w);
      if (verdict == 1) return false;
    }
    return true;
  }

  const SearchTask& task_;
  const CompiledConstraints& rules_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Color>> value_order_;
  std::vector<Color> prev_in_group_;
};

inline constexpr std::size_t kTargetBranches = 64;

struct BranchResult {
  SearchKernel::Result result = SearchKernel::Result::Cancelled;
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::optional<EdgeColoring> witness;
};

struct AttemptResult {
  SearchStatus status;
  std::optional<EdgeColoring> witness;
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
};

// One attempt: expand prefixes breadth-first (keeping depth-first order)
// until there are enough branches, then complete the branches in order. The
// outcome is that of a sequential run over the branches regardless of how
// many threads execute them.
inline AttemptResult run_attempt(const SearchKernel& kernel, std::uint64_t budget, unsigned threads) {
  using State = SearchKernel::State;
  AttemptResult out{SearchStatus::Exhausted, std::nullopt, 0, 0};
  std::vector<State> frontier;
  frontier.push_back(kernel.initial_state());
  std::size_t depth = 0;
  while (frontier.size() < kTargetBranches && depth < kernel.edge_count()) {
    std::vector<State> next;
    for (auto& s : frontier)
      for (Color c : kernel.values_for(depth)) {
        if (out.nodes >= budget) return {SearchStatus::LimitReached, std::nullopt, budget, out.prunes};
        ++out.nodes;
        State t = s;
        if (kernel.try_assign(t, c, out.prunes)) next.push_back(std::move(t));
      }
    frontier = std::move(next);
    ++depth;
    if (frontier.empty()) return out;
  }

  const std::uint64_t cap = budget - out.nodes;
  std::vector<BranchResult> results(frontier.size());
  std::atomic<std::size_t> next_branch{0};
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};
  std::mutex merge_mutex;
  std::size_t settled = 0;
  std::uint64_t settled_nodes = out.nodes;
  std::vector<bool> done(frontier.size(), false);

  // Advances the contiguous settled prefix and lowers the cutoff when that
  // prefix already decides the attempt.
  auto settle = [&](std::size_t i) {
    std::lock_guard lock(merge_mutex);
    done[i] = true;
    while (settled < results.size() && done[settled]) {
      const auto& r = results[settled];
      settled_nodes += r.nodes;
      if (r.result != SearchKernel::Result::Exhausted || settled_nodes > budget) {
        std::size_t expected = cutoff.load();
        while (settled < expected && !cutoff.compare_exchange_weak(expected, settled)) {
        }
        break;
      }
      ++settled;
    }
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_branch.fetch_add(1);
      if (i >= frontier.size()) return;
      if (i > cutoff.load()) {
        continue;
      }
      auto& r = results[i];
      State s = frontier[i];
      r.result = kernel.complete(s, cap, r.nodes, r.prunes, [&] { return i > cutoff.load(); });
      if (r.result == SearchKernel::Result::Found) {
        r.witness = s.pc.to_coloring();
        std::size_t expected = cutoff.load();
        while (i < expected && !cutoff.compare_exchange_weak(expected, i)) {
        }
      }
      if (r.result != SearchKernel::Result::Cancelled) settle(i);
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(frontier.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& r : results) {
    if (r.result == SearchKernel::Result::Cancelled) break;
    out.prunes += r.prunes;
    if (r.result == SearchKernel::Result::Capped || out.nodes + r.nodes > budget) {
      return {SearchStatus::LimitReached, std::nullopt, budget, out.prunes};
    }
    out.nodes += r.nodes;
    if (r.result == SearchKernel::Result::Found) {
      out.status = SearchStatus::Witness;
      out.witness = r.witness;
      return out;
    }
  }
  return out;
}

inline std::vector<std::vector<Color>> value_orders(const SearchTask& t, std::size_t edges, std::uint64_t attempt) {
  std::vector<Color> ascending(t.k);
  std::iota(ascending.begin(), ascending.end(), 1);
  std::vector<std::vector<Color>> out(std::max<std::size_t>(edges, 1), ascending);
  if (attempt == 0) return out;
  std::mt19937_64 rng(t.seed ^ (0x9e3779b97f4a7c15ULL * attempt));
  for (auto& order : out)
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_below(rng, i)]);
  return out;
}

inline bool satisfies_task(const EdgeColoring& c, const SearchTask& t) {
  if (t.forbid_rainbow_triangle && find_rainbow_triangle(c)) return false;
  for (const auto& f : t.forbidden)
    if (find_mono(c, f.pattern, f.color)) return false;
  return true;
}

}  // namespace detail

/// Backtracking search for a k-coloring of K_n avoiding every forbidden
/// monochromatic pattern (and rainbow triangles if requested).
///
/// Edges are assigned in column order, colors in ascending order on the first
/// attempt. When an attempt exhausts its node budget the search restarts with
/// seeded per-edge color orders and a doubled budget, until the task's node
/// limit is spent. Exhausted is only reported after a full pass over the
/// symmetry-reduced space. The result and stats.nodes depend only on the task,
/// not on `threads`. Witnesses are re-validated with the detectors.
inline SearchOutcome search_witness(const SearchTask& task, unsigned threads = 1) {
  const auto start = std::chrono::steady_clock::now();
  if (task.n < 1 || task.k < 1) throw std::invalid_argument("search_witness: need n >= 1 and k >= 1");
  if (task.node_limit < 1) throw std::invalid_argument("search_witness: node limit must be positive");
  if (task.n > kMaxSearchOrder) throw std::invalid_argument("search_witness: n is limited to 64");
  const CompiledConstraints rules(task);
  SearchOutcome out;
  std::uint64_t remaining = task.node_limit;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t growth = attempt < 40 ? (std::uint64_t{1} << attempt) : std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t base = std::max<std::uint64_t>(task.restart_base, 1);
    const std::uint64_t budget = growth > remaining / base ? remaining : base * growth;
    const detail::SearchKernel kernel(task, rules,
                                      detail::value_orders(task, detail::search_edge_order(task.n).size(), attempt));
    auto r = detail::run_attempt(kernel, budget, threads);
    out.stats.nodes += r.nodes;
    out.stats.prunes += r.prunes;
    remaining -= std::min(remaining, r.nodes);
    if (r.status != SearchStatus::LimitReached || remaining == 0) {
      out.status = r.status;
      out.witness = std::move(r.witness);
      break;
    }
    ++out.stats.restarts;
  }
  if (out.witness && !detail::satisfies_task(*out.witness, task))
    throw std::logic_error("search_witness: witness failed independent re-validation");
  out.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

enum class Unavoidability { Confirmed, CounterexampleFound, TooLarge };

struct UnavoidableResult {
  Unavoidability verdict;
  std::optional<EdgeColoring> counterexample;
  SearchStats stats;
};

/// Whether every k-coloring of K_n (Gallai colorings only, if `gallai_only`)
/// has a monochromatic copy of p. TooLarge when the symmetry-reduced search
/// needs more than `cap` nodes.
inline UnavoidableResult verify_unavoidable(std::size_t n, Color k, const PatternSpec& p, std::uint64_t cap,
                                            bool gallai_only = false, unsigned threads = 1) {
  SearchTask t;
  t.n = n;
  t.k = k;
  t.forbidden = {{p, std::nullopt}};
  t.forbid_rainbow_triangle = gallai_only;
  t.symmetry = SymmetryLevel::ColorSwap;
  t.node_limit = cap;
  t.restart_base = cap;
  auto o = search_witness(t, threads);
  switch (o.status) {
    case SearchStatus::Exhausted: return {Unavoidability::Confirmed, std::nullopt, o.stats};
    case SearchStatus::Witness: return {Unavoidability::CounterexampleFound, std::move(o.witness), o.stats};
    case SearchStatus::LimitReached: break;
  }
  return {Unavoidability::TooLarge, std::nullopt, o.stats};
}

}  // namespace gallai
