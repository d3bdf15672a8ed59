#include <gtest/gtest.h>

#include <cmath>

#include "hardcore/errors.hpp"
#include "hardcore/random.hpp"
#include "hardcore/transport.hpp"

namespace hardcore {
namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> v) { return VertexSet::of(n, v); }

TransportProblem<Rational> random_problem(Rng& rng, std::size_t m, std::size_t n) {
  TransportProblem<Rational> p;
  Rational total_s = 0;
  Rational total_d = 0;
  for (std::size_t i = 0; i < m; ++i) {
    p.supply.emplace_back(static_cast<long>(1 + uniform_below(rng, 5)));
    total_s += p.supply.back();
  }
  for (std::size_t j = 0; j < n; ++j) {
    p.demand.emplace_back(static_cast<long>(1 + uniform_below(rng, 5)));
    total_d += p.demand.back();
  }
  for (auto& x : p.supply) x /= total_s;
  for (auto& x : p.demand) x /= total_d;
  std::vector<std::int64_t> costs(m * n);
  for (auto& c : costs) c = static_cast<std::int64_t>(uniform_below(rng, 7)) - 3;
  p.cost = [costs, n](std::size_t i, std::size_t j) { return costs[i * n + j]; };
  return p;
}

TEST(TransportSimplex, MatchesBruteForceExactly) {
  Rng rng = make_rng(2024);
  for (int t = 0; t < 300; ++t) {
    auto p = random_problem(rng, 1 + uniform_below(rng, 4), 1 + uniform_below(rng, 4));
    TransportSolution<Rational> sol = solve_transport(p);
    EXPECT_EQ(sol.objective, brute_force_transport(p)) << "instance " << t;
    std::vector<Rational> rows(p.supply.size(), 0);
    for (const auto& e : sol.entries) rows[e.left] += e.mass;
    EXPECT_EQ(rows, p.supply);
  }
}

TEST(TransportSimplex, DoubleModeAgreesWithRational) {
  Rng rng = make_rng(7);
  for (int t = 0; t < 100; ++t) {
    auto p = random_problem(rng, 2 + uniform_below(rng, 6), 2 + uniform_below(rng, 6));
    TransportProblem<double> d{{}, {}, p.cost};
    for (const auto& x : p.supply) d.supply.push_back(x.get_d());
    for (const auto& x : p.demand) d.demand.push_back(x.get_d());
    EXPECT_NEAR(solve_transport(d).objective, solve_transport(p).objective.get_d(), 1e-12);
  }
}

TEST(W2Exact, IdentityIsZero) {
  ExactMeasure mu = hardcore_measure(cycle_graph(5), 1.0);
  W2Result<double> r = w2_exact(mu, mu);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_EQ(w2_exact(hardcore_measure(cycle_graph(5), Rational(1)),
                     hardcore_measure(cycle_graph(5), Rational(1)))
                .plan.expected_overlap,
            Rational(15, 11));
}

TEST(W2Exact, DisjointPointMasses) {
  EXPECT_DOUBLE_EQ(w2_exact(point_mass<double>(vs(3, {0})), point_mass<double>(vs(3, {1}))).value,
                   std::sqrt(2.0));
}

TEST(W2Exact, SingletonMatching) {
  auto a = uniform_on<Rational>(3, {vs(3, {0}), vs(3, {1})});
  auto b = uniform_on<Rational>(3, {vs(3, {0}), vs(3, {2})});
  W2Result<Rational> r = w2_exact(a, b);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.plan.expected_overlap, Rational(1, 2));
}

TEST(W2Exact, DegenerateNormalization) {
  EXPECT_THROW(w2_exact(point_mass<double>(VertexSet(3)), point_mass<double>(vs(3, {1}))),
               DegenerateNormalization);
}

TEST(W2Exact, BruteForceOracleOnSmallSupports) {
  Graph a = gen_gnp(4, 0.5, 1);
  Graph b = gen_gnp(4, 0.5, 2);
  auto mu = condition_on_size(hardcore_measure(a, Rational(1)), 1, 2);
  auto nu = condition_on_size(hardcore_measure(b, Rational(1)), 1, 2);
  if (mu.size() <= 4 && nu.size() <= 4) {
    EXPECT_NEAR(w2_exact(mu, nu).value, w2_brute_force(mu, nu), 1e-12);
  }
  auto p = uniform_on<Rational>(4, {vs(4, {0}), vs(4, {1, 2}), vs(4, {3})});
  auto q = uniform_on<Rational>(4, {vs(4, {0, 3}), vs(4, {2})});
  EXPECT_NEAR(w2_exact(p, q).value, w2_brute_force(p, q), 1e-12);
}

TEST(Couplings, UpperBoundsAndIdentities) {
  ExactMeasure mu = hardcore_measure(gen_gnp(9, 0.5, 4), 1.0);
  ExactMeasure nu = hardcore_measure(gen_gnp(9, 0.5, 5), 1.0);
  double exact = w2_exact(mu, nu).value;
  EXPECT_NEAR(w2_upper_from_coupling(identity_plan(mu)), 0.0, 1e-12);
  EXPECT_GE(w2_upper_from_coupling(product_plan(mu, nu)), exact - 1e-12);
  auto pa = point_mass<double>(vs(3, {0, 1}));
  auto pb = point_mass<double>(vs(3, {1}));
  EXPECT_NEAR(w2_upper_from_coupling(product_plan(pa, pb)), w2_exact(pa, pb).value, 1e-12);
  EXPECT_NEAR(w2_exact(pa, pb).plan.cost, 2.0 - 2.0 / std::sqrt(2.0), 1e-12);
}

TEST(Couplings, MixtureBoundDominatesOptimum) {
  ExactMeasure a1 = hardcore_measure(gen_gnp(7, 0.5, 1), 1.0);
  ExactMeasure a2 = hardcore_measure(gen_gnp(7, 0.5, 2), 1.0);
  ExactMeasure b1 = hardcore_measure(gen_gnp(7, 0.5, 3), 1.0);
  ExactMeasure b2 = hardcore_measure(gen_gnp(7, 0.5, 4), 1.0);
  std::vector<TransportPlan> plans = {w2_exact(a1, b1).plan, w2_exact(a2, b2).plan};
  MixtureBound mb = mixture_coupling_bound({0.25, 0.75}, plans);
  ExactMeasure mixa = mixture<double>({0.25, 0.75}, {a1, a2});
  ExactMeasure mixb = mixture<double>({0.25, 0.75}, {b1, b2});
  EXPECT_GE(mb.bound, w2_exact(mixa, mixb).plan.cost - 1e-12);
  EXPECT_EQ(mb.components.size(), 2u);
}

TEST(TvCoupling, MinDisagreementEqualsTv) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto mu = hardcore_measure(gen_gnp(7, 0.5, seed), Rational(1));
    auto nu = hardcore_measure(gen_gnp(7, 0.5, seed + 100), Rational(1));
    EXPECT_EQ(min_disagreement(mu, nu), tv_distance(mu, nu));
    EXPECT_NEAR(min_disagreement(to_double(mu), to_double(nu)), tv_distance(mu, nu).get_d(), 1e-12);
  }
}

TEST(W2Empirical, IdenticalAndPointMassBatches) {
  Graph g = cycle_graph(5);
  SampleBatch a = sample_batch(g, measure_sampler(hardcore_measure(g, 1.0)), 300, 1);
  W2Estimate same = w2_empirical(a, a, 200, 50, 3);
  EXPECT_NEAR(same.value, 0.0, 1e-12);
  Graph e = empty_graph(3);
  SampleBatch p = sample_batch(e, measure_sampler(point_mass<double>(vs(3, {0}))), 50, 1);
  SampleBatch q = sample_batch(e, measure_sampler(point_mass<double>(vs(3, {1}))), 50, 2);
  EXPECT_NEAR(w2_empirical(p, q, 50, 20, 3).value, std::sqrt(2.0), 1e-12);
}

TEST(W2Empirical, SelfDistanceShrinksWithM) {
  Graph g = cycle_graph(5);
  SamplerSpec spec = measure_sampler(hardcore_measure(g, 1.0));
  SampleBatch a = sample_batch(g, spec, 2000, 1);
  SampleBatch b = sample_batch(g, spec, 2000, 2);
  W2Estimate small = w2_empirical(a, b, 50, 100, 5);
  W2Estimate large = w2_empirical(a, b, 2000, 100, 5);
  EXPECT_LT(large.value, small.value);
  EXPECT_LE(large.ci_low, large.value);
  EXPECT_GE(large.ci_high, large.value);
}

}  // namespace
}  // namespace hardcore
