#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardcore {

using Vertex = std::uint32_t;

// Subset of [n] stored as a bit-vector with a cached cardinality. Doubles as
// the 0/1 indicator point in R^n, so ||1_S||^2 == size().
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);

  static VertexSet full(std::size_t universe);
  static VertexSet of(std::size_t universe, std::initializer_list<Vertex> vertices);
  static VertexSet of(std::size_t universe, std::span<const Vertex> vertices);
  // Inverse of to_hex(); throws std::invalid_argument on malformed input.
  static VertexSet from_hex(std::size_t universe, std::string_view hex);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(Vertex v) const {
    return (words_[v >> 6] >> (v & 63)) & 1ULL;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  // this := this \ other
  VertexSet& subtract(const VertexSet& other);

  std::size_t intersection_size(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  // r-th smallest member, 0 <= r < size().
  Vertex nth(std::size_t r) const;
  std::vector<Vertex> vertices() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }
  // Recompute the cached size after writing through mutable_words().
  void recount();

  // Most significant nibble first, ceil(n/4) digits (at least one).
  std::string to_hex() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  // Orders by size, then by bit pattern.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b);

 private:
  std::size_t universe_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

VertexSet operator&(VertexSet a, const VertexSet& b);
VertexSet operator|(VertexSet a, const VertexSet& b);

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept;
};

std::string to_string(const VertexSet& s);

}  // namespace hardcore
