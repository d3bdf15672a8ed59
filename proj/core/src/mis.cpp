#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "hardcore/errors.hpp"
#include "hardcore/graph.hpp"

namespace hardcore {
namespace {

// Maximum clique in the complement graph (= maximum independent set in g),
// with greedy colouring bounds on 64-bit masks.
class MisSolver {
 public:
  MisSolver(const Graph& g, std::size_t stop_at) : n_(g.order()), stop_at_(stop_at) {
    std::uint64_t all = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
    for (std::size_t v = 0; v < n_; ++v) {
      std::uint64_t row = n_ == 0 ? 0 : g.neighbors(static_cast<Vertex>(v)).words()[0];
      compat_[v] = all & ~row & ~(1ULL << v);
    }
  }

  std::size_t solve() {
    if (n_ == 0) return 0;
    std::uint64_t all = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
    expand(0, all);
    return best_;
  }

 private:
  void expand(std::size_t depth, std::uint64_t cand) {
    if (best_ >= stop_at_) return;
    std::array<Vertex, 64> order{};
    std::array<std::uint8_t, 64> bound{};
    std::size_t count = colour(cand, order, bound);
    for (std::size_t i = count; i-- > 0;) {
      if (depth + bound[i] <= best_) return;
      Vertex v = order[i];
      std::uint64_t next = cand & compat_[v];
      if (next == 0) {
        if (depth + 1 > best_) best_ = depth + 1;
      } else {
        expand(depth + 1, next);
      }
      if (best_ >= stop_at_) return;
      cand &= ~(1ULL << v);
    }
  }

  // Sequential colouring into classes of mutually incompatible vertices; the
  // class index bounds the clique size reachable from each prefix.
  std::size_t colour(std::uint64_t cand, std::array<Vertex, 64>& order,
                     std::array<std::uint8_t, 64>& bound) const {
    std::size_t count = 0;
    std::uint8_t k = 0;
    std::uint64_t uncoloured = cand;
    while (uncoloured != 0) {
      ++k;
      std::uint64_t q = uncoloured;
      while (q != 0) {
        Vertex v = static_cast<Vertex>(std::countr_zero(q));
        q &= ~(1ULL << v);
        q &= ~compat_[v];
        uncoloured &= ~(1ULL << v);
        order[count] = v;
        bound[count] = k;
        ++count;
      }
    }
    return count;
  }

  std::size_t n_;
  std::size_t stop_at_;
  std::size_t best_ = 0;
  std::array<std::uint64_t, 64> compat_{};
};

}  // namespace

std::size_t max_independent_set_size(const Graph& g, std::optional<std::size_t> stop_at) {
  if (g.order() > kExactMisVertexCap) {
    throw ContractViolation("max_independent_set_size: graph has " + std::to_string(g.order()) +
                            " vertices, exact cap is " + std::to_string(kExactMisVertexCap));
  }
  MisSolver solver(g, stop_at.value_or(g.order() + 1));
  return solver.solve();
}

}  // namespace hardcore
