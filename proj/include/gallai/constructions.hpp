#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallai/coloring.hpp"
#include "gallai/detectors.hpp"

namespace gallai {

/// Lower-bound schedule f(s) for even wheels, parameterised by
/// coeff = R_2(W_2n) - 1 (14 for W_4):
///   f(s) = coeff * 5^((s-2)/2)      for even s >= 2
///   f(s) = 2 * coeff * 5^((s-3)/2)  for odd s >= 3
///   f(1) = 4                        only for coeff = 14
/// Every Gallai s-coloring avoiding the wheel fits on f(s) vertices; the
/// Gallai-Ramsey number is f(s) + 1.
inline std::uint64_t f_value(unsigned s, std::uint64_t coeff = 14) {
  if (s < 1) throw std::invalid_argument("f_value: s must be at least 1");
  if (coeff < 1) throw std::invalid_argument("f_value: coeff must be at least 1");
  if (s == 1) {
    if (coeff != 14) throw std::domain_error("f_value: s = 1 is only defined for coeff = 14");
    return 4;
  }
  std::uint64_t value = s % 2 == 0 ? coeff : 2 * coeff;
  for (unsigned e = (s % 2 == 0 ? (s - 2) / 2 : (s - 3) / 2); e > 0; --e) {
    if (value > std::numeric_limits<std::uint64_t>::max() / 5) throw std::overflow_error("f_value overflow");
    value *= 5;
  }
  return value;
}

/// K_5 with color 1 on the cycle 0-1-2-3-4-0 and color 2 on the
/// complementary pentagram; neither color contains a triangle.
inline EdgeColoring pentagon_coloring() {
  EdgeColoring c(5, 2, 2);
  for (Vertex i = 0; i < 5; ++i) c.set_color(i, (i + 1) % 5, 1);
  return c;
}

/// Recursion tree of a lower-bound witness. Identical subtrees are shared.
struct ConstructionTrace {
  enum class Kind { Base, Join, Blowup };

  Kind kind = Kind::Base;
  std::size_t size = 0;
  /// Base: digest of the base coloring.
  std::string base_digest;
  /// Join: the cross color.
  Color join_color = 0;
  /// Blowup: the recoloured quotient and the map from the original pentagon
  /// colors (index 1, 2) to the quotient colors.
  std::optional<EdgeColoring> quotient;
  std::vector<Color> quotient_color_map;
  std::vector<std::shared_ptr<const ConstructionTrace>> children;
};

struct LowerBoundWitness {
  EdgeColoring coloring;
  std::shared_ptr<const ConstructionTrace> trace;
};

/// Checks the trace's structural invariants: size arithmetic, a fresh join
/// color, and at most two quotient colors.
inline bool trace_consistent(const ConstructionTrace& t) {
  switch (t.kind) {
    case ConstructionTrace::Kind::Base:
      return t.children.empty();
    case ConstructionTrace::Kind::Join: {
      if (t.children.size() != 2) return false;
      std::size_t total = 0;
      for (const auto& ch : t.children) {
        if (!ch || !trace_consistent(*ch)) return false;
        total += ch->size;
      }
      return total == t.size && t.join_color >= 1;
    }
    case ConstructionTrace::Kind::Blowup: {
      if (!t.quotient || t.quotient->order() != t.children.size()) return false;
      if (colors_used(*t.quotient).size() > 2) return false;
      std::size_t total = 0;
      for (const auto& ch : t.children) {
        if (!ch || !trace_consistent(*ch)) return false;
        total += ch->size;
      }
      return total == t.size;
    }
  }
  return false;
}

/// Rebuilds the coloring a trace describes from its base.
inline EdgeColoring replay_trace(const ConstructionTrace& t, const EdgeColoring& base) {
  switch (t.kind) {
    case ConstructionTrace::Kind::Base:
      if (canonical_digest(base) != t.base_digest)
        throw std::invalid_argument("replay_trace: base does not match the recorded digest");
      return base;
    case ConstructionTrace::Kind::Join:
      return join(replay_trace(*t.children[0], base), replay_trace(*t.children[1], base), t.join_color);
    case ConstructionTrace::Kind::Blowup: {
      std::vector<EdgeColoring> parts;
      for (const auto& ch : t.children) parts.push_back(replay_trace(*ch, base));
      return substitute(*t.quotient, parts, true);
    }
  }
  throw std::logic_error("replay_trace: unknown node kind");
}

/// Recursive lower-bound coloring on f_value(k, |base|) vertices using colors
/// 1..k, with no rainbow triangle and no monochromatic wheel of the given
/// (even) rim when the base has none:
///   k = 2:        the base
///   odd k >= 3:   join of two copies of witness(k-1), cross color k
///   even k >= 4:  pentagon in colors {k-1, k} blown up by witness(k-2)
inline LowerBoundWitness build_lower_bound_witness(unsigned k, const EdgeColoring& base, std::size_t rim = 4) {
  if (k < 2) throw std::invalid_argument("build_lower_bound_witness: k must be at least 2");
  if (k > static_cast<unsigned>(kMaxColors)) throw std::invalid_argument("build_lower_bound_witness: k too large");
  if (base.order() < 1) throw std::invalid_argument("build_lower_bound_witness: empty base");
  for (auto col : colors_used(base))
    if (col > 2) throw PreconditionFailed("base must use only colors 1 and 2");
  for (Color col : {1, 2})
    if (find_mono(base, PatternSpec::wheel(rim), col))
      throw PreconditionFailed("base contains a monochromatic wheel W_" + std::to_string(rim) + " in color " +
                               std::to_string(col));

  std::map<unsigned, LowerBoundWitness> memo;
  EdgeColoring base2 = base;
  base2.set_palette(2);
  auto base_trace = std::make_shared<ConstructionTrace>();
  base_trace->kind = ConstructionTrace::Kind::Base;
  base_trace->size = base2.order();
  base_trace->base_digest = canonical_digest(base2);
  memo.emplace(2, LowerBoundWitness{base2, base_trace});

  auto build = [&](auto&& self, unsigned level) -> const LowerBoundWitness& {
    if (auto it = memo.find(level); it != memo.end()) return it->second;
    auto node = std::make_shared<ConstructionTrace>();
    EdgeColoring result;
    if (level % 2 == 1) {
      const auto& prev = self(self, level - 1);
      result = join(prev.coloring, prev.coloring, static_cast<Color>(level));
      node->kind = ConstructionTrace::Kind::Join;
      node->join_color = static_cast<Color>(level);
      node->children = {prev.trace, prev.trace};
    } else {
      const auto& prev = self(self, level - 2);
      const Color lo = static_cast<Color>(level - 1), hi = static_cast<Color>(level);
      node->quotient_color_map = {0, lo, hi};
      auto quotient = recolor(pentagon_coloring(), node->quotient_color_map, hi);
      const std::vector<EdgeColoring> parts(5, prev.coloring);
      result = substitute(quotient, parts, true);
      node->kind = ConstructionTrace::Kind::Blowup;
      node->quotient = std::move(quotient);
      node->children.assign(5, prev.trace);
    }
    node->size = result.order();
    return memo.emplace(level, LowerBoundWitness{std::move(result), std::move(node)}).first->second;
  };
  return build(build, k);
}

namespace detail {

// Unbiased draw in [0, bound) from a 64-bit engine; std distributions are
// implementation-defined, which would break cross-platform determinism.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline EdgeColoring random_gallai_rec(std::size_t n, Color k, std::mt19937_64& rng) {
  if (n == 1) return EdgeColoring(1, k);
  const std::size_t p = 2 + draw_below(rng, std::min<std::size_t>(5, n) - 1);
  const Color a = 1 + static_cast<Color>(draw_below(rng, k));
  const Color b = 1 + static_cast<Color>(draw_below(rng, k));
  EdgeColoring quotient(p, k, a);
  for (Vertex u = 0; u < p; ++u)
    for (Vertex v = u + 1; v < p; ++v) quotient.set_color(u, v, draw_below(rng, 2) ? b : a);
  std::vector<EdgeColoring> parts;
  parts.reserve(p);
  for (std::size_t i = 0; i < p; ++i) parts.push_back(random_gallai_rec(n / p + (i < n % p ? 1 : 0), k, rng));
  return substitute(quotient, parts);
}

}  // namespace detail

/// Random Gallai coloring of K_n with palette k, deterministic in seed.
/// Built by recursive substitution into random 2-colored quotients on 2..5
/// vertices, so it never contains a rainbow triangle. Not uniform.
inline EdgeColoring random_gallai(std::size_t n, Color k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_gallai: n must be at least 1");
  if (k < 1 || k > kMaxColors) throw std::invalid_argument("random_gallai: bad palette");
  std::mt19937_64 rng(seed);
  return detail::random_gallai_rec(n, k, rng);
}

/// Uniformly random k-coloring of K_n (not necessarily Gallai).
inline EdgeColoring random_coloring(std::size_t n, Color k, std::uint64_t seed) {
  if (k < 1 || k > kMaxColors) throw std::invalid_argument("random_coloring: bad palette");
  std::mt19937_64 rng(seed);
  EdgeColoring c(n, k);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) c.set_color(u, v, 1 + static_cast<Color>(detail::draw_below(rng, k)));
  return c;
}

}  // namespace gallai
