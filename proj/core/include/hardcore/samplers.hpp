#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "hardcore/graph.hpp"
#include "hardcore/measures.hpp"

namespace hardcore {

struct GlauberParams {
  std::size_t target_size = 0;
  std::uint64_t horizon = 1;
  double lambda = 1.0;

  // ceil(100 * 2^s * log2 n), at least 1.
  static std::uint64_t default_horizon(std::size_t n, std::size_t s);
  static GlauberParams for_graph(std::size_t n, std::size_t s, double lambda = 1.0) {
    return {s, default_horizon(n, s), lambda};
  }
};

enum class Outcome { kSuccess, kFail };

struct TrajectoryStats {
  std::uint64_t adds = 0;
  std::uint64_t drops = 0;
  std::uint64_t blocked = 0;
};

struct RunRecord {
  Outcome outcome = Outcome::kFail;
  std::optional<VertexSet> set;  // present iff outcome == kSuccess
  std::uint64_t steps_used = 0;
  TrajectoryStats stats;
  std::uint64_t seed = 0;

  bool success() const { return outcome == Outcome::kSuccess; }
};

// Glauber dynamics from the empty set: each step picks v uniformly; a proposal
// to add v next to a neighbour is blocked (state unchanged), otherwise the
// v-coordinate is resampled with add-probability lambda / (1 + lambda). Stops
// at the first state of size target_size, or FAILs after `horizon` steps.
RunRecord glauber_run(const Graph& g, const GlauberParams& params, std::uint64_t seed);

// Randomized greedy: repeatedly add a uniform vertex compatible with the
// current set; FAIL when none is available before reaching size s.
RunRecord greedy_run(const Graph& g, std::size_t s, std::uint64_t seed);

struct CoupledRecord {
  RunRecord glauber;
  RunRecord greedy;
  bool agreed = false;
};

// Shared-randomness execution of both samplers. Greedy runs on its own stream
// (its record equals greedy_run(g, s, derive_seed(seed, "greedy"))). Glauber
// runs on a second stream, except that while no drop has happened its i-th
// addition uses greedy's i-th vertex; conditional on an addition the added
// vertex is uniform over the up-set, so Glauber's marginal law is unchanged.
CoupledRecord coupled_run(const Graph& g, std::size_t s, std::uint64_t horizon,
                          std::uint64_t seed);

inline constexpr std::uint64_t kDefaultCompletionBudget = 10'000'000;

// s ∪ T for T uniform over the (target_k - |s|)-completions of s; nullopt if
// none exist. Throws BudgetExceeded above `budget` completions.
std::optional<VertexSet> extend_uniform(const Graph& g, const VertexSet& s, std::size_t target_k,
                                        std::uint64_t seed,
                                        std::uint64_t budget = kDefaultCompletionBudget);

// k = max(0, nearest(log2 n - C log2 log2 n)). Throws for C < 7.
std::size_t size_from_constant(std::size_t n, double C);
inline bool size_constant_warns(double C) { return C < 21.0; }

struct GlauberSampler {
  GlauberParams params;
};

struct GreedySampler {
  std::size_t size = 0;
};

enum class PipelineBase { kGlauber, kGreedy };
enum class PipelineFallback { kUniformLevel, kFail };

// Base sampler to size k_minus, then a size k+ drawn from `size_law`, then a
// uniform k+-extension (or a uniform k+-subset when k+ < k_minus).
struct PipelineSampler {
  PipelineBase base = PipelineBase::kGlauber;
  std::size_t k_minus = 0;
  std::uint64_t horizon = 0;  // 0: default horizon for k_minus
  std::vector<double> size_law;
  PipelineFallback fallback = PipelineFallback::kUniformLevel;
  std::uint64_t completion_budget = kDefaultCompletionBudget;
};

// Direct draws from an exact measure (inverse CDF).
struct MeasureSampler {
  std::vector<VertexSet> support;
  std::vector<double> cdf;
};

MeasureSampler measure_sampler(const ExactMeasure& mu);

using SamplerSpec = std::variant<GlauberSampler, GreedySampler, PipelineSampler, MeasureSampler>;

RunRecord draw(const Graph& g, const SamplerSpec& spec, std::uint64_t seed);
std::string describe(const SamplerSpec& spec);

struct SampleBatch {
  std::size_t n = 0;
  std::string graph_hash;
  std::string sampler;
  std::uint64_t master_seed = 0;
  std::vector<RunRecord> records;  // records[i] is trial i

  std::size_t successes() const;
  double fail_rate() const;
};

// Trial i uses seed derive_seed(master_seed, i); identical for any parallelism.
SampleBatch sample_batch(const Graph& g, const SamplerSpec& spec, std::size_t trials,
                         std::uint64_t master_seed, std::size_t parallelism = 1);

// CSV `trial,seed,outcome,steps,set_bits_hex`.
void write_batch_csv(std::ostream& out, const SampleBatch& batch);
SampleBatch read_batch_csv(std::istream& in, std::size_t n);
// JSON sidecar with graph hash, sampler description and parameters.
void write_batch_sidecar(std::ostream& out, const SampleBatch& batch,
                         const std::string& parameters_json);

struct ProfileEstimate {
  std::vector<double> log2_z;  // estimated log2 Z_k
  std::vector<double> law;     // normalized size law at lambda = 1
};

// Size profile by chained up-degree ratios: summing updeg over k-sets counts
// each (k+1)-set k+1 times, so Z_{k+1}/Z_k = E_{S unif k-set}[updeg S]/(k+1).
// The expectation is estimated on greedy draws (k <= k_minus) or greedy draws
// extended uniformly (k > k_minus).
ProfileEstimate estimate_size_profile(const Graph& g, std::size_t k_minus,
                                      std::size_t samples_per_level, std::uint64_t seed,
                                      std::uint64_t completion_budget = kDefaultCompletionBudget);

std::vector<double> exact_size_law(const Graph& g,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace hardcore
