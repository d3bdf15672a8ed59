#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hardcore/errors.hpp"
#include "hardcore/measures.hpp"

namespace hardcore {
namespace {

VertexSet vs(std::size_t n, std::initializer_list<Vertex> v) { return VertexSet::of(n, v); }

TEST(Enumeration, Triangle) {
  Enumeration e = enumerate_independent_sets(complete_graph(3));
  EXPECT_EQ(e.profile.partition, 4u);
  ASSERT_EQ(e.sets.size(), 4u);
  EXPECT_EQ(e.sets[0], VertexSet(3));
  EXPECT_EQ(e.sets[1], vs(3, {0}));
}

TEST(Enumeration, EmptyGraphIsBinomial) {
  Enumeration e = enumerate_independent_sets(empty_graph(3));
  EXPECT_EQ(e.profile.zk, (std::vector<std::uint64_t>{1, 3, 3, 1}));
}

TEST(Enumeration, FiveCycle) {
  Enumeration e = enumerate_independent_sets(cycle_graph(5));
  EXPECT_EQ(e.profile.zk, (std::vector<std::uint64_t>{1, 5, 5}));
  EXPECT_EQ(e.profile.partition, 11u);
}

TEST(Enumeration, SizeCapAndBudget) {
  Enumeration e = enumerate_independent_sets(empty_graph(6), 2);
  EXPECT_EQ(e.profile.partition, 1u + 6u + 15u);
  EXPECT_THROW(enumerate_independent_sets(empty_graph(20), std::nullopt, 1000), BudgetExceeded);
}

TEST(HardcoreMeasure, TriangleIsUniform) {
  RationalMeasure mu = hardcore_measure(complete_graph(3), Rational(1));
  for (const auto& p : mu.probs) EXPECT_EQ(p, Rational(1, 4));
}

TEST(HardcoreMeasure, LargeFugacityFavoursSingletons) {
  ExactMeasure mu = hardcore_measure(complete_graph(3), 1e6);
  double singletons = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.support[i].size() == 1) singletons += mu.probs[i];
  }
  EXPECT_GE(singletons, 0.999);
}

TEST(HardcoreMeasure, FiveCyclePairs) {
  RationalMeasure mu = hardcore_measure(cycle_graph(5), Rational(1));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.support[i].size() == 2) EXPECT_EQ(mu.probs[i], Rational(1, 11));
  }
  EXPECT_EQ(mu.total(), Rational(1));
}

TEST(ConditionOnSize, Examples) {
  RationalMeasure tri = hardcore_measure(complete_graph(3), Rational(1));
  RationalMeasure single = condition_on_size(tri, 1, 1);
  ASSERT_EQ(single.size(), 3u);
  for (const auto& p : single.probs) EXPECT_EQ(p, Rational(1, 3));
  RationalMeasure all = condition_on_size(tri, 0, 3);
  EXPECT_EQ(all.probs, tri.probs);
  RationalMeasure pairs = condition_on_size(hardcore_measure(cycle_graph(5), Rational(1)), 2, 2);
  ASSERT_EQ(pairs.size(), 5u);
  for (const auto& p : pairs.probs) EXPECT_EQ(p, Rational(1, 5));
  EXPECT_THROW(condition_on_size(tri, 2, 3), EmptyEvent);
}

TEST(TvDistance, Examples) {
  RationalMeasure mu = hardcore_measure(cycle_graph(5), Rational(1));
  EXPECT_EQ(tv_distance(mu, mu), Rational(0));
  auto empty = point_mass<Rational>(VertexSet(2));
  auto one = point_mass<Rational>(vs(2, {0}));
  EXPECT_EQ(tv_distance(empty, one), Rational(1));
  auto half = uniform_on<Rational>(2, {VertexSet(2), vs(2, {0})});
  EXPECT_EQ(tv_distance(half, empty), Rational(1, 2));
}

TEST(SecondMoment, Examples) {
  EXPECT_DOUBLE_EQ(m2(point_mass<Rational>(VertexSet(3))), 0.0);
  EXPECT_DOUBLE_EQ(m2(uniform_on<Rational>(2, {VertexSet(2), vs(2, {0})})), std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(m2(hardcore_measure(cycle_graph(5), Rational(1))), std::sqrt(15.0 / 11.0));
  EXPECT_EQ(second_moment(hardcore_measure(cycle_graph(5), Rational(1))), Rational(15, 11));
}

TEST(MkRatios, Formula) {
  auto [forward, backward] = mk_ratio_check(16, 4);
  EXPECT_DOUBLE_EQ(forward, 12.0 / 80.0);
  EXPECT_DOUBLE_EQ(backward, 32.0 / 13.0);
  EXPECT_THROW(mk_ratio_check(16, 0), ContractViolation);
  EXPECT_DOUBLE_EQ(mk_forward_ratio(16, 0), 16.0);
}

TEST(MkRatios, ForwardRatioAtKStarWithinEnvelope) {
  std::size_t n = std::size_t{1} << 20;
  EXPECT_LE(mk_forward_ratio(n, kstar(n)), 1.2);
}

TEST(KStar, NearestWithTiesUp) {
  // log2 1024 - log2 10 = 6.678
  EXPECT_EQ(kstar(1024), 7u);
  // log2 16 - log2 4 = 2 exactly
  EXPECT_EQ(kstar(16), 2u);
  EXPECT_EQ(kstar(2000), 8u);
  EXPECT_EQ(kstar(4096), 8u);
}

TEST(Window, Bounds) {
  WindowParams w = make_window(4096, 2);
  EXPECT_EQ(w.lo(), 6u);
  EXPECT_EQ(w.hi(), 10u);
  EXPECT_THROW(make_window(16, 3), ContractViolation);
  std::vector<double> law = {0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(mass_outside_window(law, make_window(16, 1)), 0.1, 1e-15);
  EXPECT_NEAR(mass_outside_window(law, make_window(16, 0)), 0.7, 1e-15);
}

TEST(Mixture, CombinesComponents) {
  auto a = point_mass<Rational>(vs(2, {0}));
  auto b = point_mass<Rational>(vs(2, {1}));
  RationalMeasure mix = mixture<Rational>({Rational(1, 3), Rational(2, 3)}, {a, b});
  ASSERT_EQ(mix.size(), 2u);
  EXPECT_EQ(mix.total(), Rational(1));
}

TEST(MeasureCsv, RoundTrip) {
  ExactMeasure mu = hardcore_measure(cycle_graph(5), 1.0);
  std::stringstream ss;
  write_measure_csv(ss, mu);
  ExactMeasure back = read_measure_csv(ss, 5);
  ASSERT_EQ(back.size(), mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    EXPECT_EQ(back.support[i], mu.support[i]);
    EXPECT_NEAR(back.probs[i], mu.probs[i], 1e-15);
  }
}

}  // namespace
}  // namespace hardcore
