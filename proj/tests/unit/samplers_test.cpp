#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "hardcore/errors.hpp"
#include "hardcore/measures.hpp"
#include "hardcore/random.hpp"
#include "hardcore/samplers.hpp"

namespace hardcore {
namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> v) { return VertexSet::of(n, v); }

TEST(Glauber, SingleVertexSucceeds) {
  Graph g = empty_graph(1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RunRecord r = glauber_run(g, {1, 100, 1.0}, seed);
    ASSERT_TRUE(r.success());
    EXPECT_EQ(*r.set, vs(1, {0}));
    EXPECT_LE(r.steps_used, 100u);
  }
}

TEST(Glauber, UnreachableLevelAlwaysFails) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RunRecord r = glauber_run(complete_graph(3), {2, 500, 1.0}, seed);
    EXPECT_FALSE(r.success());
    EXPECT_FALSE(r.set.has_value());
    EXPECT_EQ(r.steps_used, 500u);
  }
}

TEST(Glauber, OutputIsIndependentOfTargetSize) {
  Graph g = gen_gnp(200, 0.5, 3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RunRecord r = glauber_run(g, GlauberParams::for_graph(200, 5), seed);
    ASSERT_TRUE(r.success());
    EXPECT_EQ(r.set->size(), 5u);
    EXPECT_TRUE(is_independent(g, *r.set));
  }
}

TEST(Glauber, DeterministicPerSeed) {
  Graph g = gen_gnp(100, 0.5, 3);
  RunRecord a = glauber_run(g, GlauberParams::for_graph(100, 4), 99);
  RunRecord b = glauber_run(g, GlauberParams::for_graph(100, 4), 99);
  EXPECT_EQ(a.set, b.set);
  EXPECT_EQ(a.steps_used, b.steps_used);
}

TEST(Glauber, DefaultHorizon) {
  EXPECT_EQ(GlauberParams::default_horizon(4096, 6), 76800u);
  EXPECT_EQ(GlauberParams::default_horizon(1, 3), 1u);
}

TEST(Greedy, EmptyGraphReachesFullSet) {
  RunRecord r = greedy_run(empty_graph(5), 5, 1);
  ASSERT_TRUE(r.success());
  EXPECT_EQ(*r.set, VertexSet::full(5));
}

TEST(Greedy, PathLaw) {
  // P({0,2}) = 2/3, FAIL (stuck at the middle vertex) = 1/3.
  const int trials = 30'000;
  int success = 0;
  for (int t = 0; t < trials; ++t) {
    RunRecord r = greedy_run(path_graph(3), 2, static_cast<std::uint64_t>(t));
    if (r.success()) {
      EXPECT_EQ(*r.set, vs(3, {0, 2}));
      ++success;
    }
  }
  EXPECT_NEAR(success / static_cast<double>(trials), 2.0 / 3.0, 0.015);
}

TEST(Greedy, TriangleSingletonsUniform) {
  std::map<Vertex, int> counts;
  for (int t = 0; t < 30'000; ++t) {
    RunRecord r = greedy_run(complete_graph(3), 1, static_cast<std::uint64_t>(t));
    ASSERT_TRUE(r.success());
    ++counts[r.set->nth(0)];
  }
  for (const auto& [v, c] : counts) EXPECT_NEAR(c / 30'000.0, 1.0 / 3.0, 0.015);
}

TEST(Coupled, EmptyGraphAgreesOften) {
  int agreed = 0;
  const int trials = 5000;
  for (int t = 0; t < trials; ++t) {
    CoupledRecord c = coupled_run(empty_graph(4), 2, 10'000, static_cast<std::uint64_t>(t));
    ASSERT_TRUE(c.glauber.success());
    ASSERT_TRUE(c.greedy.success());
    agreed += c.agreed;
    if (c.agreed) EXPECT_EQ(c.glauber.set, c.greedy.set);
  }
  EXPECT_GE(agreed / static_cast<double>(trials), 0.5);
}

TEST(Coupled, BothFailOnUnreachableLevel) {
  CoupledRecord c = coupled_run(complete_graph(3), 2, 100, 7);
  EXPECT_FALSE(c.glauber.success());
  EXPECT_FALSE(c.greedy.success());
  EXPECT_FALSE(c.agreed);
}

TEST(Coupled, GreedySideMatchesStandaloneGreedy) {
  Graph g = gen_gnp(60, 0.5, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CoupledRecord c = coupled_run(g, 4, 5000, seed);
    RunRecord alone = greedy_run(g, 4, derive_seed(seed, "greedy"));
    EXPECT_EQ(c.greedy.set, alone.set);
  }
}

TEST(ExtendUniform, Examples) {
  std::map<VertexSet, int> counts;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) {
    auto out = extend_uniform(empty_graph(4), vs(4, {0}), 2, seed);
    ASSERT_TRUE(out.has_value());
    ++counts[*out];
  }
  EXPECT_EQ(counts.size(), 3u);
  for (const auto& [s, c] : counts) {
    EXPECT_TRUE(s.contains(0));
    EXPECT_NEAR(c / 6000.0, 1.0 / 3.0, 0.03);
  }
  EXPECT_FALSE(extend_uniform(complete_graph(3), vs(3, {0}), 2, 1).has_value());
  std::map<VertexSet, int> cyc;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) ++cyc[*extend_uniform(cycle_graph(5), vs(5, {0}), 2, seed)];
  ASSERT_EQ(cyc.size(), 2u);
  EXPECT_TRUE(cyc.count(vs(5, {0, 2})));
  EXPECT_TRUE(cyc.count(vs(5, {0, 3})));
}

TEST(ExtendUniform, BudgetExceeded) {
  EXPECT_THROW(extend_uniform(empty_graph(40), VertexSet(40), 6, 1, 1000), BudgetExceeded);
}

TEST(SizeFromConstant, Bounds) {
  EXPECT_THROW(size_from_constant(1024, 6.9), ContractViolation);
  EXPECT_EQ(size_from_constant(4096, 30.0), 0u);
  EXPECT_TRUE(size_constant_warns(20.0));
  EXPECT_FALSE(size_constant_warns(30.0));
}

TEST(Batch, EmptyAndDeterministic) {
  Graph g = gen_gnp(80, 0.5, 5);
  SamplerSpec spec = GlauberSampler{GlauberParams::for_graph(80, 4)};
  EXPECT_TRUE(sample_batch(g, spec, 0, 1).records.empty());
  SampleBatch a = sample_batch(g, spec, 200, 11, 1);
  SampleBatch b = sample_batch(g, spec, 200, 11, 3);
  std::ostringstream sa;
  std::ostringstream sb;
  write_batch_csv(sa, a);
  write_batch_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  SampleBatch c = sample_batch(g, spec, 200, 12, 1);
  std::size_t same = 0;
  for (std::size_t i = 0; i < 200; ++i) same += a.records[i].set == c.records[i].set;
  EXPECT_LT(same, 100u);
}

TEST(Batch, CsvRoundTrip) {
  Graph g = gen_gnp(30, 0.5, 5);
  SampleBatch a = sample_batch(g, GreedySampler{6}, 50, 3);
  std::stringstream ss;
  write_batch_csv(ss, a);
  SampleBatch b = read_batch_csv(ss, 30);
  ASSERT_EQ(b.records.size(), a.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(b.records[i].set, a.records[i].set);
    EXPECT_EQ(b.records[i].outcome, a.records[i].outcome);
  }
}

TEST(Pipeline, OutputsIndependentSetsOfDrawnSizes) {
  Graph g = gen_gnp(14, 0.5, 8);
  std::vector<double> law = exact_size_law(g);
  PipelineSampler spec{PipelineBase::kGlauber, 2, 0, law, PipelineFallback::kUniformLevel};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RunRecord r = draw(g, spec, seed);
    ASSERT_TRUE(r.success());
    EXPECT_TRUE(is_independent(g, *r.set));
    EXPECT_GT(law[r.set->size()], 0.0);
  }
}

TEST(SizeProfile, EstimateTracksExactLaw) {
  Graph g = gen_gnp(40, 0.5, 6);
  std::vector<double> exact = exact_size_law(g);
  ProfileEstimate est = estimate_size_profile(g, 3, 400, 17);
  double tv = 0.0;
  for (std::size_t k = 0; k < std::max(exact.size(), est.law.size()); ++k) {
    double a = k < exact.size() ? exact[k] : 0.0;
    double b = k < est.law.size() ? est.law[k] : 0.0;
    tv += std::abs(a - b) / 2.0;
  }
  EXPECT_LT(tv, 0.1);
}

TEST(MeasureSampler, DrawsFromSupport) {
  ExactMeasure mu = hardcore_measure(cycle_graph(5), 1.0);
  MeasureSampler ms = measure_sampler(mu);
  std::map<VertexSet, int> counts;
  for (std::uint64_t seed = 0; seed < 11'000; ++seed) ++counts[*draw(cycle_graph(5), ms, seed).set];
  EXPECT_EQ(counts.size(), 11u);
  for (const auto& [s, c] : counts) EXPECT_NEAR(c / 11'000.0, 1.0 / 11.0, 0.015);
}

}  // namespace
}  // namespace hardcore
