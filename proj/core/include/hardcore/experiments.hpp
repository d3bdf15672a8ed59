#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hardcore/chaos.hpp"
#include "hardcore/config.hpp"
#include "hardcore/graph.hpp"

namespace hardcore {

enum class ExitCode : int { kPass = 0, kPropertyFailure = 1, kUsage = 2, kBudgetExceeded = 3 };

// Completed cells of a resumable experiment, persisted as JSON after every
// update (write to a temporary file, then rename).
class Manifest {
 public:
  explicit Manifest(std::filesystem::path file);
  bool done(const std::string& key) const;
  std::optional<std::string> artifact(const std::string& key) const;
  void mark(const std::string& key, const std::string& artifact);

 private:
  void save() const;
  std::filesystem::path file_;
  std::map<std::string, std::string> cells_;
};

// Seeds: every graph and trial seed is a pure function of (master seed, tags).
std::uint64_t graph_seed(std::uint64_t master, std::size_t n, std::size_t index);
std::uint64_t cell_seed(std::uint64_t master, const std::string& experiment, std::size_t n,
                        std::size_t index);

// Target size: config.k when set, else size_from_constant(n, C).
std::size_t target_size(const ExperimentConfig& config, std::size_t n);
// ceil(horizon_factor * 2^k * log2 n), at least 1.
std::uint64_t horizon_for(const ExperimentConfig& config, std::size_t n, std::size_t k);
// Base size of the chaos sampler: config.k_minus when set, else max(1, k* - 2).
std::size_t chaos_k_minus(const ExperimentConfig& config, std::size_t n);

// Largest n for which experiments enumerate the hardcore measure exactly.
inline constexpr std::size_t kExactEnumerationMaxN = 24;
inline constexpr std::size_t kExactTransportMaxN = 12;

struct ChaosRow {
  std::size_t n = 0;
  double s = 0.0;
  std::size_t trial = 0;
  ChaosCertificate cert;
  std::optional<double> w2sq_exact;
  std::string graph_hash;
  std::string noisy_hash;
  bool flagged = false;  // sampler FAIL rate above the limit
};

// One (n, s) cell of the chaos sweep: trial t uses base graph
// gen_gnp(n, p, graph_seed(master, n, t)), so the s-sweep shares base graphs.
std::vector<ChaosRow> chaos_cell(const ExperimentConfig& config, std::size_t n, double s);
std::string chaos_csv_header(bool with_exact);
std::string chaos_csv_row(const ChaosRow& row, bool with_exact);

struct SamplingRow {
  std::size_t n = 0;
  std::size_t graph_index = 0;
  std::string graph_hash;
  std::size_t k = 0;
  std::size_t k_minus = 0;
  std::uint64_t horizon = 0;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double greedy_success_rate = 0.0;
  double agreement_rate = 0.0;
  double extended_success_rate = 0.0;
  std::optional<double> w2_stopped;
  std::optional<double> w2_extended;
  bool all_fail = false;
};

// One (n, graph) cell of the Glauber sampling experiment: `trials` coupled
// runs to size k, plus (if config.extend) the extension pipeline from
// k_minus (default k) and, in exact mode, both exact W2 columns.
struct SamplingCell {
  SamplingRow row;
  SampleBatch glauber;
  SampleBatch extended;
};
SamplingCell sampling_cell(const ExperimentConfig& config, std::size_t n, std::size_t graph_index);
std::string sampling_csv_header();
std::string sampling_csv_row(const SamplingRow& row);

struct ZkRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t graph_seeds = 0;
  double mean = 0.0;
  double variance = 0.0;
  double stderr = 0.0;
  double expected = 0.0;
  double z_score = 0.0;
  double rel_variance = 0.0;
  double envelope = 0.0;  // 100 k^5 / n^2
  bool within_envelope = true;
};
struct ZkCell {
  std::vector<ZkRow> rows;                                   // k = 0..kmax
  std::vector<std::vector<std::uint64_t>> counts;            // counts[g][k]
  std::vector<std::string> graph_hashes;
};
ZkCell zk_cell(const ExperimentConfig& config, std::size_t n, std::size_t kmax);
std::string zk_csv_header();
std::string zk_csv_row(const ZkRow& row);

struct UniformityRow {
  std::size_t n = 0;
  std::size_t graph_index = 0;
  std::string graph_hash;
  std::size_t k = 0;
  std::size_t sets = 0;
  double min_p = 0.0;
  double max_p = 0.0;
  double ratio = 0.0;
  std::vector<std::pair<VertexSet, double>> samples;  // (set, exact greedy probability)
};
UniformityRow uniformity_cell(const ExperimentConfig& config, std::size_t n,
                              std::size_t graph_index, std::size_t k);
std::string uniformity_csv_header();
std::string uniformity_csv_row(const UniformityRow& row);

// CLI commands. Each writes `<out_dir>/<name>.csv` plus a JSON sidecar and
// returns a process exit code. Cells already recorded in
// `<out_dir>/manifest.json` are reused.
ExitCode cmd_gen(const ExperimentConfig& config, std::ostream& log);
ExitCode cmd_chaos(const ExperimentConfig& config, std::ostream& log);
ExitCode cmd_glauber_sample(const ExperimentConfig& config, std::ostream& log);
ExitCode cmd_zk(const ExperimentConfig& config, std::ostream& log);
ExitCode cmd_greedy_uniformity(const ExperimentConfig& config, std::ostream& log);
ExitCode cmd_verify(const ExperimentConfig& config, std::ostream& log);

// Dispatch by name; maps BudgetExceeded to kBudgetExceeded and
// ContractViolation to kUsage.
ExitCode run_command(const std::string& name, const ExperimentConfig& config, std::ostream& log);

std::string format_double(double x);

}  // namespace hardcore
