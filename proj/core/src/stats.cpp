#include "hardcore/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

#include "hardcore/errors.hpp"

namespace hardcore {

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& probs, double alpha,
                               double min_expected) {
  if (observed.size() != probs.size()) {
    throw ContractViolation("chi_square_gof: observed and probs differ in length");
  }
  double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(),
                                                     std::uint64_t{0}));
  ChiSquareResult out;
  if (total == 0) return out;

  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return probs[a] < probs[b];
  });
  std::vector<double> bin_expected;
  std::vector<double> bin_observed;
  double e = 0.0;
  double o = 0.0;
  for (std::size_t idx : order) {
    e += probs[idx] * total;
    o += static_cast<double>(observed[idx]);
    if (e >= min_expected) {
      bin_expected.push_back(e);
      bin_observed.push_back(o);
      e = o = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (bin_expected.empty()) {
      bin_expected.push_back(e);
      bin_observed.push_back(o);
    } else {
      bin_expected.back() += e;
      bin_observed.back() += o;
    }
  }
  out.bins = bin_expected.size();
  for (std::size_t i = 0; i < out.bins; ++i) {
    if (bin_expected[i] == 0.0) {
      if (bin_observed[i] > 0.0) out.statistic = INFINITY;
      continue;
    }
    double d = bin_observed[i] - bin_expected[i];
    out.statistic += d * d / bin_expected[i];
  }
  if (out.bins < 2) {
    out.pass = std::isfinite(out.statistic);
    return out;
  }
  out.dof = out.bins - 1;
  boost::math::chi_squared dist(static_cast<double>(out.dof));
  out.critical = boost::math::quantile(boost::math::complement(dist, alpha));
  out.p_value = std::isfinite(out.statistic)
                    ? boost::math::cdf(boost::math::complement(dist, out.statistic))
                    : 0.0;
  out.pass = out.statistic <= out.critical;
  return out;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double standard_error(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ContractViolation("least_squares: need at least two paired points");
  }
  double mx = mean(x);
  double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ContractViolation("least_squares: constant abscissa");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace hardcore
