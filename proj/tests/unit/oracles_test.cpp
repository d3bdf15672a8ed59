#include <gtest/gtest.h>

#include <cmath>

#include "hardcore/oracles.hpp"
#include "hardcore/random.hpp"

namespace hardcore {
namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> v) { return VertexSet::of(n, v); }

std::size_t index_of(const std::vector<VertexSet>& sets, const VertexSet& s) {
  return static_cast<std::size_t>(std::find(sets.begin(), sets.end(), s) - sets.begin());
}

template <class P>
P prob_of(const OutcomeLaw<P>& law, const VertexSet& s) {
  std::size_t i = index_of(law.sets, s);
  return i < law.sets.size() ? law.probs[i] : P(0);
}

TEST(GlauberKernel, SingleVertex) {
  TransitionOperator p = exact_glauber_kernel(empty_graph(1), Rational(1));
  ASSERT_EQ(p.from.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(p.at(i, j), Rational(1, 2));
  }
}

TEST(GlauberKernel, TriangleSingletonReturnsToEmpty) {
  TransitionOperator p = exact_glauber_kernel(complete_graph(3), Rational(1));
  std::size_t empty = index_of(p.from, VertexSet(3));
  std::size_t one = index_of(p.from, vs(3, {0}));
  EXPECT_EQ(p.at(one, empty), Rational(1, 6));
  EXPECT_EQ(p.at(one, one), Rational(5, 6));
  EXPECT_EQ(stochasticity_defect(p), Rational(0));
}

TEST(GlauberKernel, DetailedBalanceOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen_gnp(3 + seed % 6, 0.5, seed);
    Rational lambda(2, 3);
    TransitionOperator p = exact_glauber_kernel(g, lambda);
    RationalMeasure mu = hardcore_measure(g, lambda);
    EXPECT_TRUE(check_detailed_balance(p, mu.probs).holds);
    EXPECT_EQ(push_forward(mu.probs, p), mu.probs);
  }
}

TEST(GlauberKernel, BrokenKernelReportsWitnessPair) {
  Graph g = path_graph(3);
  TransitionOperator p = exact_glauber_kernel(g, Rational(1));
  RationalMeasure mu = hardcore_measure(g, Rational(1));
  // Fault injection: move mass from the self-loop of {0} onto {0} -> {}.
  std::size_t x = index_of(p.from, vs(3, {0}));
  std::size_t y = index_of(p.from, VertexSet(3));
  for (auto& [c, q] : p.rows[x]) {
    if (c == y) q += Rational(1, 12);
    if (c == x) q -= Rational(1, 12);
  }
  BalanceReport r = check_detailed_balance(p, mu.probs);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  auto [a, b] = *r.witness;
  EXPECT_TRUE((a == x && b == y) || (a == y && b == x));
}

TEST(TimeReversal, GlauberKernelIsSelfReversed) {
  Graph g = gen_gnp(6, 0.5, 4);
  TransitionOperator p = exact_glauber_kernel(g, Rational(1));
  RationalMeasure mu = hardcore_measure(g, Rational(1));
  TransitionOperator pp = time_reversal(p, mu.probs);
  for (std::size_t i = 0; i < p.from.size(); ++i) {
    for (std::size_t j = 0; j < p.from.size(); ++j) EXPECT_EQ(pp.at(i, j), p.at(i, j));
  }
  ReversalReport r = check_time_reversal(p, pp, mu.probs);
  EXPECT_TRUE(r.preserves);
  EXPECT_TRUE(r.support_clause);
}

TEST(StoppedGlauber, SingleVertexFailMass) {
  OutcomeLaw<Rational> law = exact_stopped_glauber_rational(empty_graph(1), 1, 3, Rational(1));
  EXPECT_EQ(law.fail, Rational(1, 8));
  EXPECT_EQ(prob_of(law, vs(1, {0})), Rational(7, 8));
}

TEST(StoppedGlauber, TriangleTwoSteps) {
  OutcomeLaw<Rational> law = exact_stopped_glauber_rational(complete_graph(3), 1, 2, Rational(1));
  EXPECT_EQ(law.success_mass(), Rational(3, 4));
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(prob_of(law, vs(3, {v})), Rational(1, 4));
}

TEST(StoppedGlauber, AbsorbingLevelReached) {
  OutcomeLaw<double> law = exact_stopped_glauber(empty_graph(2), 2, 400);
  EXPECT_NEAR(prob_of(law, VertexSet::full(2)), 1.0, 1e-12);
}

TEST(StoppedGlauber, DoubleMatchesRational) {
  Graph g = gen_gnp(7, 0.5, 3);
  OutcomeLaw<double> d = exact_stopped_glauber(g, 3, 40);
  OutcomeLaw<Rational> r = exact_stopped_glauber_rational(g, 3, 40, Rational(1));
  ASSERT_EQ(d.sets, r.sets);
  for (std::size_t i = 0; i < d.sets.size(); ++i) EXPECT_NEAR(d.probs[i], r.probs[i].get_d(), 1e-12);
  EXPECT_NEAR(d.fail, r.fail.get_d(), 1e-12);
}

TEST(GreedyLaw, Examples) {
  OutcomeLaw<Rational> path = exact_greedy_law(path_graph(3), 2);
  EXPECT_EQ(prob_of(path, vs(3, {0, 2})), Rational(2, 3));
  EXPECT_EQ(path.fail, Rational(1, 3));
  OutcomeLaw<Rational> full = exact_greedy_law(empty_graph(3), 3);
  ASSERT_EQ(full.sets.size(), 1u);
  EXPECT_EQ(full.probs[0], Rational(1));
  OutcomeLaw<Rational> tri = exact_greedy_law(complete_graph(3), 1);
  for (const auto& p : tri.probs) EXPECT_EQ(p, Rational(1, 3));
}

TEST(GreedySetProbability, SubsetRecursionMatchesPermutations) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen_gnp(200, 0.5, seed);
    RunRecord r = greedy_run(g, 6, seed);
    ASSERT_TRUE(r.success());
    EXPECT_NEAR(greedy_set_probability(g, *r.set),
                greedy_set_probability_by_permutations(g, *r.set),
                1e-12 * greedy_set_probability(g, *r.set));
  }
}

TEST(GreedySetProbability, MatchesExactLaw) {
  Graph g = gen_gnp(8, 0.5, 5);
  OutcomeLaw<Rational> law = exact_greedy_law(g, 3);
  for (std::size_t i = 0; i < law.sets.size(); ++i) {
    EXPECT_NEAR(greedy_set_probability(g, law.sets[i]), law.probs[i].get_d(), 1e-12);
  }
}

TEST(GreedySetProbability, EmptyGraphIsSymmetric) {
  Graph g = empty_graph(12);
  double a = greedy_set_probability(g, vs(12, {0, 1, 2, 3}));
  double b = greedy_set_probability(g, vs(12, {4, 7, 9, 11}));
  EXPECT_EQ(a, b);
  EXPECT_NEAR(a, 1.0 / 495.0, 1e-15);
}

TEST(ExtensionWalk, EmptyGraph) {
  ExtensionWalk w = extension_walk(empty_graph(4), 1, 2);
  ASSERT_EQ(w.left.size(), 4u);
  ASSERT_EQ(w.right.size(), 6u);
  for (std::size_t i = 0; i < 4; ++i) {
    ASSERT_EQ(w.p.rows[i].size(), 3u);
    for (const auto& [j, q] : w.p.rows[i]) {
      EXPECT_EQ(q, Rational(1, 3));
      EXPECT_TRUE(w.left[i].is_subset_of(w.right[j]));
    }
  }
  for (const auto& q : push_forward(w.mu_left_h, w.p)) EXPECT_EQ(q, Rational(1, 6));
}

TEST(ExtensionWalk, FiveCyclePushesToUniform) {
  ExtensionWalk w = extension_walk(cycle_graph(5), 1, 2);
  EXPECT_TRUE(w.isolated.empty());
  for (const auto& q : push_forward(w.mu_left_h, w.p)) EXPECT_EQ(q, Rational(1, 5));
  ReversalReport r = check_time_reversal(w.p, w.p_prime, w.greedy_left);
  EXPECT_TRUE(r.preserves);
  EXPECT_TRUE(r.support_clause);
}

TEST(ExtensionWalk, FlagsUnextendableSets) {
  ExtensionWalk w = extension_walk(path_graph(3), 1, 2);
  ASSERT_EQ(w.isolated.size(), 1u);
  EXPECT_EQ(w.left[w.isolated[0]], vs(3, {1}));
}

TEST(PipelineLaw, IsAProbabilityAndMatchesDraws) {
  Graph g = gen_gnp(8, 0.5, 12);
  PipelineSampler spec{PipelineBase::kGlauber, 1, 30, exact_size_law(g),
                       PipelineFallback::kUniformLevel};
  OutcomeLaw<double> law = exact_pipeline_law(g, spec);
  EXPECT_NEAR(law.success_mass() + law.fail, 1.0, 1e-12);
  std::vector<RunRecord> records;
  for (std::uint64_t t = 0; t < 50'000; ++t) records.push_back(draw(g, spec, derive_seed(77, t)));
  EXPECT_TRUE(compare_to_law(records, law).pass);
}

TEST(CompareToLaw, UnknownSetFails) {
  OutcomeLaw<double> law{3, {vs(3, {0})}, {1.0}, 0.0};
  RunRecord r;
  r.outcome = Outcome::kSuccess;
  r.set = vs(3, {1});
  std::vector<RunRecord> recs(10, r);
  EXPECT_FALSE(compare_to_law(recs, law).pass);
}

TEST(EllUpdeg, ClosedFormMean) {
  // ell = 1: (n - k) 2^{-k} = d_k.
  EXPECT_NEAR(ell_updeg_mean(20, 3, 1).get_d(), d_j(20, 3), 1e-9);
  EXPECT_EQ(ell_updeg_mean(10, 2, 2), Rational(7, 8));
}

TEST(EllUpdeg, MomentProbeMeanWithinThreeSigma) {
  MomentProbeReport r = ell_updeg_moment_probe(512, 6, 2, 300, 5);
  EXPECT_LE(std::abs(r.empirical_mean - r.closed_form_mean), 3.0 * r.stderr);
}

TEST(EllUpdeg, RelativeSpreadShrinksWithN) {
  MomentProbeReport small = ell_updeg_moment_probe(512, 4, 2, 100, 5);
  MomentProbeReport large = ell_updeg_moment_probe(2048, 4, 2, 100, 5);
  EXPECT_LT(large.relative_spread, small.relative_spread);
}

}  // namespace
}  // namespace hardcore
