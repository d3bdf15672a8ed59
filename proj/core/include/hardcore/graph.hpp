#pragma once

#include <cstddef>
#include <cstdint>
#include <cmath>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hardcore/rational.hpp"
#include "hardcore/vertex_set.hpp"

namespace hardcore {

// Simple undirected graph on vertices 0..n-1 stored as a dense symmetric
// bit-matrix with zero diagonal. Row v is the neighborhood of v.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t order() const { return rows_.size(); }
  bool adjacent(Vertex u, Vertex v) const { return rows_[u].contains(v); }
  const VertexSet& neighbors(Vertex v) const { return rows_[v]; }

  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  void set_edge(Vertex u, Vertex v, bool present);

  std::size_t edge_count() const;
  // Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  // FNV-1a over n and the upper triangle, as 16 hex digits.
  std::string hash() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<VertexSet> rows_;
};

Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);

struct NoiseParams {
  double s = 0.0;  // resample probability
  double p = 0.5;  // edge density of fresh draws
};

struct NoiseOptions {
  // Derive the selection and fresh-edge streams from the seed alone, so that
  // sweeps over s at a fixed seed share their randomness.
  bool common_random_numbers = false;
};

// G(n, p): each unordered pair independently present with probability p.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

// Noise operator T_{1-s}: each unordered pair is kept with probability 1-s and
// replaced by a fresh Bernoulli(p) draw with probability s.
Graph resample_noise(const Graph& g, const NoiseParams& params, std::uint64_t seed,
                     const NoiseOptions& options = {});

bool is_independent(const Graph& g, const VertexSet& s);

// Vertices outside s with no neighbor in s. Throws ContractViolation if s is
// not independent.
VertexSet up_set(const Graph& g, const VertexSet& s);
std::size_t up_degree(const Graph& g, const VertexSet& s);

// Number of ell-sets T disjoint from s with s ∪ T independent.
std::uint64_t ell_up_degree(const Graph& g, const VertexSet& s, std::size_t ell);

// Count of ell-subsets of `candidates` that are independent in g.
std::uint64_t count_independent_subsets(const Graph& g, const VertexSet& candidates,
                                        std::size_t ell);

// As above, but stops once the count exceeds `cap`; any result > cap only
// certifies that the true count exceeds the cap.
std::uint64_t count_independent_subsets_capped(const Graph& g, const VertexSet& candidates,
                                               std::size_t ell, std::uint64_t cap);

// The index-th completion (0-based, in lexicographic order of sorted vertex
// lists) among the ell_up_degree(g, s, ell) completions of s.
VertexSet completion_at(const Graph& g, const VertexSet& s, std::size_t ell,
                        std::uint64_t index);

// Calls f(T) for each ell-completion T of s, lexicographic order; stops early
// when f returns false.
void for_each_completion(const Graph& g, const VertexSet& s, std::size_t ell,
                         const std::function<bool(const VertexSet&)>& f);

// Vertices relabeled 0..|s|-1 in ascending original order.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

inline constexpr std::size_t kExactMisVertexCap = 64;

// Exact maximum independent set size by branch and bound (colour bound).
// `stop_at` lets callers stop as soon as an independent set of that size is
// found. Throws ContractViolation above kExactMisVertexCap vertices.
std::size_t max_independent_set_size(const Graph& g,
                                     std::optional<std::size_t> stop_at = std::nullopt);

// log2 with the library-wide base-2 convention.
inline double lg(double x) { return std::log2(x); }

// log2 of M_k = C(n,k) 2^{-C(k,2)}.
double log2_expected_zk(std::size_t n, std::size_t k);
double expected_zk(std::size_t n, std::size_t k);
Rational expected_zk_exact(std::size_t n, std::size_t k);

// d_j = (n - j) 2^{-j}, the expected up-degree of a j-set.
double d_j(std::size_t n, std::size_t j);

// Graph text format: "hcg v1 <n>" then "u v" per edge (u < v), newline-terminated.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

}  // namespace hardcore
