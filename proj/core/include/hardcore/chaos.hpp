#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "hardcore/graph.hpp"
#include "hardcore/samplers.hpp"

namespace hardcore {

// Lower bound on the squared normalized W2 distance between mu_G and mu_G'.
// For any coupling (S, S'), S ∩ S' is independent in G' and contained in S,
// so |S ∩ S'| <= alpha(G'[S]); hence
//   W2^2 >= 2 - 2 E_{S~mu_G}[alpha(G'[S])] / (m2(mu_G) m2(mu_G')).
struct ChaosCertificate {
  std::size_t n = 0;
  double s = 0.0;
  std::size_t trials = 0;
  double overlap_bound = 0.0;  // estimate of E alpha(G'[S])
  double overlap_stderr = 0.0;
  double m2_left = 0.0;
  double m2_right = 0.0;
  double m2_left_stderr = 0.0;
  double m2_right_stderr = 0.0;
  double w2sq_lower = 0.0;
  double stderr = 0.0;  // delta-method standard error of w2sq_lower
  double fail_rate = 0.0;
  bool exact = false;
};

struct ChaosOptions {
  double max_fail_rate = 0.05;
  std::size_t parallelism = 1;
};

// Monte Carlo certificate: `trials` draws from each sampler (left on g, right
// on g_prime). Throws DataQualityError when either FAIL rate exceeds the limit.
ChaosCertificate chaos_lower_bound(const Graph& g, const Graph& g_prime, const SamplerSpec& left,
                                   const SamplerSpec& right, std::size_t trials,
                                   std::uint64_t seed, const ChaosOptions& options = {});

// Exact certificate from the enumerated hardcore measures (small graphs).
ChaosCertificate chaos_lower_bound_exact(const Graph& g, const Graph& g_prime,
                                         double lambda = 1.0);

void write_certificate_json(std::ostream& out, const ChaosCertificate& cert,
                            const std::string& context_json);

// ceil((log2 k)^2): the size a sub-independent set must reach to survive.
std::size_t survival_threshold(std::size_t k);

// P(an edgeless k-vertex graph still has an independent set of size
// survival_threshold(k) after noise s), by Monte Carlo. k <= 64.
double survival_probability(std::size_t k, double s, std::size_t trials, std::uint64_t seed);

// Union bound C(k, L) (1 - s/2)^{C(L,2)} with L = survival_threshold(k).
double survival_envelope(std::size_t k, double s);

}  // namespace hardcore
