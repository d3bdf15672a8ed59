#include <bit>
#include <stdexcept>
#include <vector>

#include "hardcore/errors.hpp"
#include "hardcore/graph.hpp"

namespace hardcore {
namespace {

// Counts / selects / enumerates independent ell-subsets of a candidate set by
// branching on the smallest member. Scratch rows are kept per depth so the
// hot loop does no allocation.
class SubsetWalker {
 public:
  SubsetWalker(const Graph& g, std::size_t max_depth)
      : g_(g), words_((g.order() + 63) / 64), scratch_(max_depth + 1, std::vector<std::uint64_t>(words_)) {}

  // Counting stops early once the running total exceeds the cap.
  void set_cap(std::uint64_t cap) { cap_ = cap; }

  std::uint64_t count(const std::uint64_t* cand, std::size_t ell, std::size_t depth) {
    if (ell == 0) return 1;
    if (ell == 1) return popcount(cand);
    std::uint64_t total = 0;
    std::uint64_t* next = scratch_[depth].data();
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        Vertex v = static_cast<Vertex>(w * 64 + b);
        auto row = g_.neighbors(v).words();
        if (ell == 2) {
          total += std::popcount(bits & ~row[w]);
          for (std::size_t x = w + 1; x < words_; ++x) total += std::popcount(cand[x] & ~row[x]);
        } else {
          for (std::size_t x = 0; x < w; ++x) next[x] = 0;
          next[w] = bits & ~row[w];
          for (std::size_t x = w + 1; x < words_; ++x) next[x] = cand[x] & ~row[x];
          total += count(next, ell - 1, depth + 1);
        }
        if (total > cap_) return total;
      }
    }
    return total;
  }

  void select(const std::uint64_t* cand, std::size_t ell, std::uint64_t r, VertexSet& out,
              std::size_t depth) {
    if (ell == 0) return;
    std::uint64_t* next = scratch_[depth].data();
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        Vertex v = static_cast<Vertex>(w * 64 + b);
        auto row = g_.neighbors(v).words();
        for (std::size_t x = 0; x < w; ++x) next[x] = 0;
        next[w] = bits & ~row[w];
        for (std::size_t x = w + 1; x < words_; ++x) next[x] = cand[x] & ~row[x];
        std::uint64_t c = count(next, ell - 1, depth + 1);
        if (r < c) {
          out.insert(v);
          select(next, ell - 1, r, out, depth + 1);
          return;
        }
        r -= c;
      }
    }
    throw std::out_of_range("completion index beyond completion count");
  }

  bool enumerate(const std::uint64_t* cand, std::size_t ell, VertexSet& current,
                 const std::function<bool(const VertexSet&)>& f, std::size_t depth) {
    if (ell == 0) return f(current);
    std::vector<std::uint64_t> next(words_);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        Vertex v = static_cast<Vertex>(w * 64 + b);
        auto row = g_.neighbors(v).words();
        for (std::size_t x = 0; x < w; ++x) next[x] = 0;
        next[w] = bits & ~row[w];
        for (std::size_t x = w + 1; x < words_; ++x) next[x] = cand[x] & ~row[x];
        current.insert(v);
        bool keep_going = enumerate(next.data(), ell - 1, current, f, depth + 1);
        current.erase(v);
        if (!keep_going) return false;
      }
    }
    return true;
  }

 private:
  std::uint64_t popcount(const std::uint64_t* cand) const {
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(cand[w]);
    return c;
  }

  const Graph& g_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> scratch_;
  std::uint64_t cap_ = ~0ULL;
};

}  // namespace

std::uint64_t count_independent_subsets(const Graph& g, const VertexSet& candidates,
                                        std::size_t ell) {
  if (ell == 0) return 1;
  if (ell > candidates.size()) return 0;
  SubsetWalker walker(g, ell);
  return walker.count(candidates.words().data(), ell, 0);
}

std::uint64_t count_independent_subsets_capped(const Graph& g, const VertexSet& candidates,
                                               std::size_t ell, std::uint64_t cap) {
  if (ell == 0) return 1;
  if (ell > candidates.size()) return 0;
  SubsetWalker walker(g, ell);
  walker.set_cap(cap);
  return walker.count(candidates.words().data(), ell, 0);
}

std::uint64_t ell_up_degree(const Graph& g, const VertexSet& s, std::size_t ell) {
  VertexSet cand = up_set(g, s);
  return count_independent_subsets(g, cand, ell);
}

VertexSet completion_at(const Graph& g, const VertexSet& s, std::size_t ell,
                        std::uint64_t index) {
  VertexSet cand = up_set(g, s);
  VertexSet out(g.order());
  SubsetWalker walker(g, ell + 1);
  walker.select(cand.words().data(), ell, index, out, 0);
  return out;
}

void for_each_completion(const Graph& g, const VertexSet& s, std::size_t ell,
                         const std::function<bool(const VertexSet&)>& f) {
  VertexSet cand = up_set(g, s);
  VertexSet current(g.order());
  SubsetWalker walker(g, ell + 1);
  walker.enumerate(cand.words().data(), ell, current, f, 0);
}

}  // namespace hardcore
