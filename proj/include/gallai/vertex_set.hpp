#pragma once

#include <bit>
#include <type_traits>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gallai {

using Vertex = std::size_t;

/// Fixed-universe bitset over vertex ids 0..size()-1.
///
/// Detectors and the search kernel are lookup-bound, so set algebra is done a
/// word at a time. Iteration via for_each visits members in ascending order.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (Vertex v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  void insert(Vertex v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool contains(Vertex v) const noexcept {
    return (words_[v >> 6] >> (v & 63)) & 1U;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexSet& operator&=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) noexcept { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) noexcept { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) noexcept { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  /// |a & b| without materialising the intersection.
  static std::size_t intersection_count(const VertexSet& a, const VertexSet& b) noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    return c;
  }

  /// Least member, or universe() when empty.
  Vertex first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<Vertex>(std::countr_zero(words_[i]));
    return universe_;
  }

  /// Calls f(v) for members in ascending order; stops early if f returns true.
  template <class F>
  bool for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const Vertex v = i * 64 + static_cast<Vertex>(std::countr_zero(w));
        w &= w - 1;
        if constexpr (std::is_same_v<decltype(f(v)), bool>) {
          if (f(v)) return true;
        } else {
          f(v);
        }
      }
    }
    return false;
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace gallai
