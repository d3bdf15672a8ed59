#include <gtest/gtest.h>

#include <cmath>

#include "hardcore/stats.hpp"

namespace hardcore {
namespace {

TEST(ChiSquare, CriticalValueAndVerdict) {
  ChiSquareResult r = chi_square_gof({50, 50}, {0.5, 0.5});
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.dof, 1u);
  EXPECT_NEAR(r.critical, 6.634896601, 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(chi_square_gof({90, 10}, {0.5, 0.5}).pass);
}

TEST(ChiSquare, PoolsSmallBins) {
  // Expected counts 490, 5, 3, 2: the last two pool into one bin of 5.
  ChiSquareResult r = chi_square_gof({490, 5, 3, 2}, {0.98, 0.01, 0.006, 0.004});
  EXPECT_EQ(r.bins, 3u);
  EXPECT_TRUE(r.pass);
}

TEST(Moments, Basic) {
  std::vector<double> xs = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mean(xs), 2.5);
  EXPECT_DOUBLE_EQ(sample_variance(xs), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(standard_error(xs), std::sqrt(5.0 / 12.0));
}

TEST(LeastSquares, ExactLine) {
  LinearFit f = least_squares({1, 2, 3}, {5, 3, 1});
  EXPECT_NEAR(f.slope, -2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 7.0, 1e-12);
}

}  // namespace
}  // namespace hardcore
