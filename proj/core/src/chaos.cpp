#include "hardcore/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "hardcore/errors.hpp"
#include "hardcore/measures.hpp"
#include "hardcore/parallel.hpp"
#include "hardcore/random.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // sample variance
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
    m.var /= static_cast<double>(xs.size() - 1);
  }
  return m;
}

double covariance(const std::vector<double>& xs, const std::vector<double>& ys, double mx,
                  double my) {
  if (xs.size() < 2) return 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) c += (xs[i] - mx) * (ys[i] - my);
  return c / static_cast<double>(xs.size() - 1);
}

void check_fail_rate(const SampleBatch& batch, double limit, const char* side) {
  if (batch.fail_rate() > limit) {
    throw DataQualityError(std::string("chaos_lower_bound: ") + side + " sampler FAIL rate " +
                           std::to_string(batch.fail_rate()) + " exceeds " +
                           std::to_string(limit));
  }
}

}  // namespace

ChaosCertificate chaos_lower_bound(const Graph& g, const Graph& g_prime, const SamplerSpec& left,
                                   const SamplerSpec& right, std::size_t trials,
                                   std::uint64_t seed, const ChaosOptions& options) {
  if (g.order() != g_prime.order()) throw ContractViolation("chaos_lower_bound: order mismatch");
  if (trials < 2) throw ContractViolation("chaos_lower_bound: need at least 2 trials");
  SampleBatch lb = sample_batch(g, left, trials, derive_seed(seed, "left"), options.parallelism);
  SampleBatch rb =
      sample_batch(g_prime, right, trials, derive_seed(seed, "right"), options.parallelism);
  check_fail_rate(lb, options.max_fail_rate, "left");
  check_fail_rate(rb, options.max_fail_rate, "right");

  std::vector<double> sizes_left;
  std::vector<double> overlaps;
  std::vector<double> sizes_right;
  for (const auto& r : lb.records) {
    if (!r.success()) continue;
    sizes_left.push_back(static_cast<double>(r.set->size()));
    overlaps.push_back(static_cast<double>(
        max_independent_set_size(induced_subgraph(g_prime, *r.set))));
  }
  for (const auto& r : rb.records) {
    if (r.success()) sizes_right.push_back(static_cast<double>(r.set->size()));
  }
  Moments ov = moments(overlaps);
  Moments a = moments(sizes_left);
  Moments b = moments(sizes_right);
  if (a.mean == 0.0 || b.mean == 0.0) {
    throw DegenerateNormalization("chaos_lower_bound: sampled sets are all empty");
  }
  double na = static_cast<double>(overlaps.size());
  double nb = static_cast<double>(sizes_right.size());
  double cov = covariance(overlaps, sizes_left, ov.mean, a.mean);

  ChaosCertificate c;
  c.n = g.order();
  c.trials = trials;
  c.overlap_bound = ov.mean;
  c.overlap_stderr = std::sqrt(ov.var / na);
  c.m2_left = std::sqrt(a.mean);
  c.m2_right = std::sqrt(b.mean);
  // m2 = sqrt(E|S|): stderr by the delta method.
  c.m2_left_stderr = std::sqrt(a.var / na) / (2.0 * c.m2_left);
  c.m2_right_stderr = std::sqrt(b.var / nb) / (2.0 * c.m2_right);
  double root = std::sqrt(a.mean * b.mean);
  c.w2sq_lower = 2.0 - 2.0 * ov.mean / root;
  double g_o = -2.0 / root;
  double g_a = ov.mean / (a.mean * root);
  double g_b = ov.mean / (b.mean * root);
  double var = (g_o * g_o * ov.var + g_a * g_a * a.var + 2.0 * g_o * g_a * cov) / na +
               g_b * g_b * b.var / nb;
  c.stderr = std::sqrt(std::max(0.0, var));
  c.fail_rate = std::max(lb.fail_rate(), rb.fail_rate());
  return c;
}

ChaosCertificate chaos_lower_bound_exact(const Graph& g, const Graph& g_prime, double lambda) {
  if (g.order() != g_prime.order()) throw ContractViolation("chaos_lower_bound: order mismatch");
  Rational lam = rational_from_double(lambda);
  RationalMeasure mu = hardcore_measure(g, lam);
  RationalMeasure nu = hardcore_measure(g_prime, lam);
  Rational overlap = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    overlap += mu.probs[i] *
               Rational(static_cast<long>(
                   max_independent_set_size(induced_subgraph(g_prime, mu.support[i]))));
  }
  Rational a2 = second_moment(mu);
  Rational b2 = second_moment(nu);
  if (sgn(a2) == 0 || sgn(b2) == 0) throw DegenerateNormalization("chaos_lower_bound: m2 = 0");
  ChaosCertificate c;
  c.n = g.order();
  c.exact = true;
  c.overlap_bound = overlap.get_d();
  c.m2_left = std::sqrt(a2.get_d());
  c.m2_right = std::sqrt(b2.get_d());
  double ratio = a2 == b2 ? Rational(overlap / a2).get_d()
                          : overlap.get_d() / std::sqrt(a2.get_d() * b2.get_d());
  c.w2sq_lower = 2.0 - 2.0 * ratio;
  return c;
}

void write_certificate_json(std::ostream& out, const ChaosCertificate& c,
                            const std::string& context_json) {
  nlohmann::json j = {{"n", c.n},
                      {"s", c.s},
                      {"trials", c.trials},
                      {"overlap_bound", c.overlap_bound},
                      {"overlap_stderr", c.overlap_stderr},
                      {"m2_left", c.m2_left},
                      {"m2_right", c.m2_right},
                      {"m2_left_stderr", c.m2_left_stderr},
                      {"m2_right_stderr", c.m2_right_stderr},
                      {"w2sq_lower", c.w2sq_lower},
                      {"stderr", c.stderr},
                      {"fail_rate", c.fail_rate},
                      {"exact", c.exact}};
  j["context"] = context_json.empty() ? nlohmann::json::object()
                                      : nlohmann::json::parse(context_json);
  out << j.dump(2) << '\n';
}

std::size_t survival_threshold(std::size_t k) {
  if (k <= 1) return 0;
  double l = lg(static_cast<double>(k));
  return static_cast<std::size_t>(std::ceil(l * l - 1e-12));
}

double survival_probability(std::size_t k, double s, std::size_t trials, std::uint64_t seed) {
  if (k > kExactMisVertexCap) throw ContractViolation("survival_probability: k above MIS cap");
  if (trials == 0) throw ContractViolation("survival_probability: trials must be positive");
  std::size_t threshold = survival_threshold(k);
  if (threshold > k) return 0.0;
  Graph base = empty_graph(k);
  std::size_t survived = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Graph noisy = resample_noise(base, {s, 0.5}, derive_seed(seed, t));
    if (max_independent_set_size(noisy, threshold) >= threshold) ++survived;
  }
  return static_cast<double>(survived) / static_cast<double>(trials);
}

double survival_envelope(std::size_t k, double s) {
  std::size_t threshold = survival_threshold(k);
  if (threshold > k) return 0.0;
  if (threshold < 2) return 1.0;
  double pairs = static_cast<double>(threshold) * static_cast<double>(threshold - 1) / 2.0;
  double log2_env = log2_big(binomial(k, threshold)) + pairs * std::log2(1.0 - s / 2.0);
  return std::min(1.0, std::exp2(log2_env));
}

}  // namespace hardcore
