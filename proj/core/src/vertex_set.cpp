#include "hardcore/vertex_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace hardcore {
namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), size_(0), words_(word_count(universe), 0) {}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~0ULL;
  if (universe % 64 != 0 && !s.words_.empty()) {
    s.words_.back() = (1ULL << (universe % 64)) - 1;
  }
  s.size_ = universe;
  return s;
}

VertexSet VertexSet::of(std::size_t universe, std::initializer_list<Vertex> vertices) {
  return of(universe, std::span<const Vertex>(vertices.begin(), vertices.size()));
}

VertexSet VertexSet::of(std::size_t universe, std::span<const Vertex> vertices) {
  VertexSet s(universe);
  for (Vertex v : vertices) {
    if (v >= universe) throw std::out_of_range("vertex outside universe");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::from_hex(std::size_t universe, std::string_view hex) {
  VertexSet s(universe);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    int value = hex_value(*it);
    if (value < 0) throw std::invalid_argument("bad hex digit in vertex set");
    for (int b = 0; b < 4; ++b) {
      if ((value >> b) & 1) {
        if (bit + b >= universe) throw std::invalid_argument("hex vertex set exceeds universe");
        s.insert(static_cast<Vertex>(bit + b));
      }
    }
  }
  return s;
}

void VertexSet::insert(Vertex v) {
  std::uint64_t mask = 1ULL << (v & 63);
  if (!(words_[v >> 6] & mask)) {
    words_[v >> 6] |= mask;
    ++size_;
  }
}

void VertexSet::erase(Vertex v) {
  std::uint64_t mask = 1ULL << (v & 63);
  if (words_[v >> 6] & mask) {
    words_[v >> 6] &= ~mask;
    --size_;
  }
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  recount();
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  recount();
  return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  recount();
  return *this;
}

std::size_t VertexSet::intersection_size(const VertexSet& other) const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    total += std::popcount(words_[w] & other.words_[w]);
  }
  return total;
}

bool VertexSet::intersects(const VertexSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

Vertex VertexSet::nth(std::size_t r) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::size_t c = std::popcount(words_[w]);
    if (r < c) {
      std::uint64_t bits = words_[w];
      for (std::size_t i = 0; i < r; ++i) bits &= bits - 1;
      return static_cast<Vertex>(w * 64 + std::countr_zero(bits));
    }
    r -= c;
  }
  throw std::out_of_range("VertexSet::nth beyond size");
}

std::vector<Vertex> VertexSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(size_);
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

void VertexSet::recount() {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  size_ = total;
}

std::string VertexSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::size_t digits = std::max<std::size_t>(1, (universe_ + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    std::size_t bit = d * 4;
    std::size_t word = bit / 64;
    if (word >= words_.size()) break;
    unsigned nibble = static_cast<unsigned>((words_[word] >> (bit % 64)) & 0xF);
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words_.rbegin(), a.words_.rend(),
                                                b.words_.rbegin(), b.words_.rend());
}

VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ s.universe();
  for (std::uint64_t w : s.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string to_string(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Vertex v) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  });
  out += '}';
  return out;
}

}  // namespace hardcore
