#include "hardcore/graph.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <iomanip>

#include "hardcore/errors.hpp"
#include "hardcore/random.hpp"

namespace hardcore {

Graph::Graph(std::size_t n) : rows_(n, VertexSet(n)) {}

void Graph::add_edge(Vertex u, Vertex v) { set_edge(u, v, true); }
void Graph::remove_edge(Vertex u, Vertex v) { set_edge(u, v, false); }

void Graph::set_edge(Vertex u, Vertex v, bool present) {
  if (u >= order() || v >= order()) throw std::out_of_range("edge endpoint outside graph");
  if (u == v) {
    if (present) throw ContractViolation("self-loops are not allowed");
    return;
  }
  if (present) {
    rows_[u].insert(v);
    rows_[v].insert(u);
  } else {
    rows_[u].erase(v);
    rows_[v].erase(u);
  }
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : rows_) twice += row.size();
  return twice / 2;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < order(); ++u) {
    rows_[u].for_each([&](Vertex v) {
      if (u < v) out.emplace_back(u, v);
    });
  }
  return out;
}

std::string Graph::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  feed(order());
  for (const auto& row : rows_) {
    for (std::uint64_t w : row.words()) feed(w);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(static_cast<Vertex>(n - 1), 0);
  return g;
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("gen_gnp requires n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("gen_gnp requires 0 <= p <= 1");
  Rng rng = make_rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) g.add_edge(u, v);
    }
  }
  return g;
}

Graph resample_noise(const Graph& g, const NoiseParams& params, std::uint64_t seed,
                     const NoiseOptions& options) {
  if (!(params.s >= 0.0 && params.s <= 1.0)) throw ContractViolation("noise requires 0 <= s <= 1");
  if (!(params.p > 0.0 && params.p < 1.0)) throw ContractViolation("noise requires 0 < p < 1");
  std::uint64_t base = seed;
  if (!options.common_random_numbers) {
    std::uint64_t sbits = 0;
    std::uint64_t pbits = 0;
    std::memcpy(&sbits, &params.s, sizeof sbits);
    std::memcpy(&pbits, &params.p, sizeof pbits);
    base = derive_seed(derive_seed(seed, sbits), pbits);
  }
  Rng select = make_rng(derive_seed(base, "noise-select"));
  Rng fresh = make_rng(derive_seed(base, "noise-fresh"));
  const std::size_t n = g.order();
  Graph out = g;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      // Both streams advance on every pair so that pair (u, v) always sees the
      // same pair of draws for a given seed.
      double pick = uniform01(select);
      double coin = uniform01(fresh);
      if (pick < params.s) out.set_edge(u, v, coin < params.p);
    }
  }
  return out;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  bool ok = true;
  s.for_each([&](Vertex v) {
    if (ok && g.neighbors(v).intersects(s)) ok = false;
  });
  return ok;
}

VertexSet up_set(const Graph& g, const VertexSet& s) {
  VertexSet cand = VertexSet::full(g.order());
  bool ok = true;
  s.for_each([&](Vertex v) {
    const VertexSet& row = g.neighbors(v);
    if (row.intersects(s)) ok = false;
    auto words = cand.mutable_words();
    auto nb = row.words();
    for (std::size_t w = 0; w < words.size(); ++w) words[w] &= ~nb[w];
  });
  if (!ok) throw ContractViolation("up-degree requires an independent set");
  auto words = cand.mutable_words();
  auto own = s.words();
  for (std::size_t w = 0; w < words.size(); ++w) words[w] &= ~own[w];
  cand.recount();
  return cand;
}

std::size_t up_degree(const Graph& g, const VertexSet& s) { return up_set(g, s).size(); }

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> verts = s.vertices();
  Graph out(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (g.adjacent(verts[i], verts[j])) {
        out.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return out;
}

double log2_expected_zk(std::size_t n, std::size_t k) {
  if (k > n) throw ContractViolation("expected_zk requires k <= n");
  std::size_t m = std::min(k, n - k);
  double log_binom = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    log_binom += std::log2(static_cast<double>(n - i)) - std::log2(static_cast<double>(i + 1));
  }
  double pairs = static_cast<double>(k) * (static_cast<double>(k) - 1.0) / 2.0;
  return log_binom - pairs;
}

double expected_zk(std::size_t n, std::size_t k) { return std::exp2(log2_expected_zk(n, k)); }

Rational expected_zk_exact(std::size_t n, std::size_t k) {
  if (k > n) throw ContractViolation("expected_zk requires k <= n");
  BigInt den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k * (k == 0 ? 0 : k - 1) / 2);
  Rational r(binomial(n, k), den);
  r.canonicalize();
  return r;
}

double d_j(std::size_t n, std::size_t j) {
  if (j > n) throw ContractViolation("d_j requires j <= n");
  return std::ldexp(static_cast<double>(n - j), -static_cast<int>(j));
}

}  // namespace hardcore
