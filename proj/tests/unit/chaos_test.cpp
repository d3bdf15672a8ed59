#include <gtest/gtest.h>

#include <cmath>

#include "hardcore/chaos.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/transport.hpp"

namespace hardcore {
namespace {

TEST(ChaosExact, ZeroNoiseGivesZero) {
  Graph g = gen_gnp(10, 0.5, 1);
  ChaosCertificate c = chaos_lower_bound_exact(g, g);
  EXPECT_NEAR(c.w2sq_lower, 0.0, 1e-12);
  EXPECT_NEAR(c.overlap_bound, c.m2_left * c.m2_left, 1e-12);
  EXPECT_TRUE(c.exact);
}

TEST(ChaosExact, LowerBoundsExactTransport) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen_gnp(10, 0.5, seed);
    Graph gp = resample_noise(g, {0.5, 0.5}, seed + 1000);
    double exact = w2_exact(hardcore_measure(g, 1.0), hardcore_measure(gp, 1.0)).plan.cost;
    EXPECT_LE(chaos_lower_bound_exact(g, gp).w2sq_lower, exact + 1e-9) << "seed " << seed;
  }
}

TEST(ChaosMonteCarlo, ZeroNoiseWithinError) {
  Graph g = gen_gnp(12, 0.5, 3);
  MeasureSampler ms = measure_sampler(hardcore_measure(g, 1.0));
  ChaosCertificate c = chaos_lower_bound(g, g, ms, ms, 4000, 9);
  EXPECT_LE(std::abs(c.w2sq_lower), 4.0 * c.stderr + 1e-12);
  EXPECT_EQ(c.fail_rate, 0.0);
}

TEST(ChaosMonteCarlo, FailRateAboveLimitIsDataQualityError) {
  Graph g = complete_graph(3);
  SamplerSpec never = GlauberSampler{{2, 50, 1.0}};
  EXPECT_THROW(chaos_lower_bound(g, g, never, never, 100, 1), DataQualityError);
}

TEST(ChaosMonteCarlo, ParallelismDoesNotChangeTheCertificate) {
  Graph g = gen_gnp(60, 0.5, 2);
  Graph gp = resample_noise(g, {1.0, 0.5}, 3);
  SamplerSpec spec = GreedySampler{4};
  ChaosCertificate a = chaos_lower_bound(g, gp, spec, spec, 200, 5, {0.05, 1});
  ChaosCertificate b = chaos_lower_bound(g, gp, spec, spec, 200, 5, {0.05, 4});
  EXPECT_EQ(a.w2sq_lower, b.w2sq_lower);
  EXPECT_EQ(a.stderr, b.stderr);
}

TEST(Survival, Threshold) {
  EXPECT_EQ(survival_threshold(4), 4u);
  EXPECT_EQ(survival_threshold(8), 9u);
  EXPECT_EQ(survival_threshold(64), 36u);
}

TEST(Survival, NoNoiseAlwaysSurvives) {
  EXPECT_DOUBLE_EQ(survival_probability(16, 0.0, 200, 1), 1.0);
}

TEST(Survival, BoundaryCaseFourVertices) {
  // Threshold 4 = k: the whole noisy 4-vertex graph must stay edgeless.
  double expected = std::pow(1.0 - 0.5, 6);
  double sd = std::sqrt(expected * (1 - expected) / 20'000.0);
  EXPECT_NEAR(survival_probability(4, 1.0, 20'000, 3), expected, 4 * sd);
}

TEST(Survival, BelowUnionBoundEnvelope) {
  double p = survival_probability(64, 1.0, 2000, 5);
  EXPECT_LE(p, survival_envelope(64, 1.0) + 1e-12);
  EXPECT_DOUBLE_EQ(survival_envelope(2, 0.5), 1.0);
}

}  // namespace
}  // namespace hardcore
