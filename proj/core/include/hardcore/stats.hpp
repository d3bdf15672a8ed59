#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hardcore {

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double critical = 0.0;
  double p_value = 1.0;
  std::size_t bins = 0;
  bool pass = true;
};

// Pearson goodness-of-fit test of counts against category probabilities at
// level alpha. Categories are pooled (smallest expected first) until every
// bin expects at least `min_expected` observations.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& probs, double alpha = 0.01,
                               double min_expected = 5.0);

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double standard_error(const std::vector<double>& xs);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hardcore
