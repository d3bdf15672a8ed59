#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hardcore/errors.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/random.hpp"

namespace hardcore {
namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> v) { return VertexSet::of(n, v); }

TEST(VertexSet, HexRoundTripAndOrdering) {
  VertexSet s = vs(70, {0, 5, 64, 69});
  EXPECT_EQ(VertexSet::from_hex(70, s.to_hex()), s);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.nth(2), 64u);
  EXPECT_LT(vs(70, {69}), vs(70, {0, 1}));
  EXPECT_THROW(VertexSet::from_hex(4, "zz"), std::invalid_argument);
}

TEST(Gnp, ExtremeDensities) {
  EXPECT_EQ(gen_gnp(3, 0.0, 1), empty_graph(3));
  EXPECT_EQ(gen_gnp(3, 1.0, 1), complete_graph(3));
}

TEST(Gnp, EdgeCountConcentrates) {
  Graph g = gen_gnp(1000, 0.5, 42);
  double mean = 1000.0 * 999.0 / 4.0;
  double sd = std::sqrt(1000.0 * 999.0 / 8.0);
  EXPECT_LT(std::abs(static_cast<double>(g.edge_count()) - mean), 4.0 * sd);
}

TEST(Gnp, DeterministicPerSeed) {
  EXPECT_EQ(gen_gnp(200, 0.5, 9), gen_gnp(200, 0.5, 9));
  EXPECT_NE(gen_gnp(200, 0.5, 9).hash(), gen_gnp(200, 0.5, 10).hash());
}

TEST(Noise, ZeroNoiseIsIdentity) {
  Graph g = gen_gnp(50, 0.5, 3);
  EXPECT_EQ(resample_noise(g, {0.0, 0.5}, 11), g);
}

TEST(Noise, FullResampleForgetsTheInput) {
  // With s = 1 the output is a fresh G(n, p), whatever the input.
  std::size_t agree = 0;
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph a = resample_noise(complete_graph(8), {1.0, 0.5}, seed);
    pairs += 28;
    agree += a.edge_count();
  }
  double frac = static_cast<double>(agree) / static_cast<double>(pairs);
  EXPECT_NEAR(frac, 0.5, 0.03);
}

TEST(Noise, EdgeRetentionIsOneMinusHalfS) {
  std::size_t kept = 0;
  const std::size_t seeds = 10'000;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    kept += resample_noise(complete_graph(3), {0.5, 0.5}, seed).edge_count();
  }
  EXPECT_NEAR(static_cast<double>(kept) / (3.0 * seeds), 0.75, 0.02);
}

TEST(Noise, CommonRandomNumbersNestAcrossS) {
  // Shared streams: edges resampled at a smaller s are a subset of those at a larger s.
  Graph g = gen_gnp(60, 0.5, 5);
  Graph lo = resample_noise(g, {0.25, 0.5}, 77, {true});
  Graph hi = resample_noise(g, {0.75, 0.5}, 77, {true});
  std::size_t lo_changed = 0;
  std::size_t hi_changed = 0;
  for (Vertex u = 0; u < 60; ++u) {
    for (Vertex v = u + 1; v < 60; ++v) {
      lo_changed += lo.adjacent(u, v) != g.adjacent(u, v);
      hi_changed += hi.adjacent(u, v) != g.adjacent(u, v);
    }
  }
  EXPECT_LE(lo_changed, hi_changed);
}

TEST(Independence, Examples) {
  EXPECT_FALSE(is_independent(complete_graph(3), vs(3, {0, 1})));
  EXPECT_TRUE(is_independent(gen_gnp(10, 0.5, 1), VertexSet(10)));
  EXPECT_TRUE(is_independent(path_graph(3), vs(3, {0, 2})));
}

TEST(UpDegree, Examples) {
  EXPECT_EQ(up_degree(empty_graph(5), VertexSet(5)), 5u);
  EXPECT_EQ(up_degree(complete_graph(3), vs(3, {0})), 0u);
  EXPECT_EQ(up_degree(path_graph(3), vs(3, {0})), 1u);
  EXPECT_THROW(up_degree(complete_graph(3), vs(3, {0, 1})), ContractViolation);
}

TEST(EllUpDegree, Examples) {
  EXPECT_EQ(ell_up_degree(empty_graph(4), VertexSet(4), 2), 6u);
  EXPECT_EQ(ell_up_degree(path_graph(4), VertexSet(4), 2), 3u);
  Graph g = gen_gnp(30, 0.5, 8);
  VertexSet s(30);
  EXPECT_EQ(ell_up_degree(g, s, 0), 1u);
  EXPECT_EQ(ell_up_degree(g, s, 1), up_degree(g, s));
  EXPECT_THROW(ell_up_degree(complete_graph(3), vs(3, {0, 2}), 1), ContractViolation);
}

TEST(EllUpDegree, CompletionsEnumerateTheCount) {
  Graph g = gen_gnp(16, 0.5, 21);
  VertexSet s(16);
  std::uint64_t count = ell_up_degree(g, s, 3);
  std::uint64_t seen = 0;
  for_each_completion(g, s, 3, [&](const VertexSet& t) {
    EXPECT_EQ(t.size(), 3u);
    EXPECT_TRUE(is_independent(g, t | s));
    ++seen;
    return true;
  });
  EXPECT_EQ(seen, count);
  if (count > 0) EXPECT_TRUE(is_independent(g, completion_at(g, s, 3, count - 1)));
}

TEST(InducedSubgraph, Examples) {
  EXPECT_EQ(induced_subgraph(complete_graph(3), vs(3, {0, 1})), complete_graph(2));
  EXPECT_EQ(induced_subgraph(path_graph(3), VertexSet(3)).order(), 0u);
  EXPECT_EQ(induced_subgraph(path_graph(3), vs(3, {0, 2})), empty_graph(2));
}

TEST(MaxIndependentSet, Examples) {
  EXPECT_EQ(max_independent_set_size(complete_graph(3)), 1u);
  EXPECT_EQ(max_independent_set_size(empty_graph(7)), 7u);
  EXPECT_EQ(max_independent_set_size(cycle_graph(5)), 2u);
  EXPECT_THROW(max_independent_set_size(empty_graph(kExactMisVertexCap + 1)), ContractViolation);
}

TEST(MaxIndependentSet, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gen_gnp(12, 0.5, seed);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
      VertexSet s(12);
      for (Vertex v = 0; v < 12; ++v) {
        if (mask >> v & 1u) s.insert(v);
      }
      if (is_independent(g, s)) best = std::max(best, s.size());
    }
    EXPECT_EQ(max_independent_set_size(g), best) << "seed " << seed;
  }
}

TEST(ExpectedZk, Examples) {
  EXPECT_DOUBLE_EQ(expected_zk(4, 2), 3.0);
  EXPECT_DOUBLE_EQ(expected_zk(57, 0), 1.0);
  Rational exact = expected_zk_exact(100, 10);
  double oracle = std::log2(exact.get_d());
  EXPECT_NEAR(log2_expected_zk(100, 10), oracle, 1e-9 * std::abs(oracle));
}

TEST(DJ, Examples) {
  EXPECT_DOUBLE_EQ(d_j(10, 0), 10.0);
  EXPECT_DOUBLE_EQ(d_j(10, 3), 7.0 / 8.0);
  EXPECT_DOUBLE_EQ(d_j(10, 10), 0.0);
}

TEST(GraphIo, RoundTrip) {
  Graph g = gen_gnp(37, 0.5, 4);
  std::stringstream ss;
  write_graph(ss, g);
  Graph h = read_graph(ss);
  EXPECT_EQ(h, g);
  EXPECT_EQ(h.hash(), g.hash());
}

TEST(Counting, MatchesEnumeration) {
  Graph g = gen_gnp(14, 0.5, 2);
  VertexSet all = VertexSet::full(14);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= 14; ++k) total += count_independent_subsets(g, all, k);
  std::uint64_t brute = 0;
  for (std::uint32_t mask = 0; mask < (1u << 14); ++mask) {
    VertexSet s(14);
    for (Vertex v = 0; v < 14; ++v) {
      if (mask >> v & 1u) s.insert(v);
    }
    brute += is_independent(g, s);
  }
  EXPECT_EQ(total, brute);
}

}  // namespace
}  // namespace hardcore
