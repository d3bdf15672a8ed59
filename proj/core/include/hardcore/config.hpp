#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace hardcore {

inline constexpr const char* kVersion = "0.1.0";

// Experiment parameters, persisted as `key = value` lines ('#' comments,
// comma-separated lists). to_text() followed by parse_config() is lossless.
struct ExperimentConfig {
  std::string experiment = "chaos";
  std::vector<std::size_t> n = {100};
  double p = 0.5;
  double lambda = 1.0;
  std::vector<double> s = {0.0, 0.25, 0.5, 0.75, 1.0};
  double C = 30.0;                    // size constant: k = log2 n - C log2 log2 n
  double c_min = 7.0;                 // C below this is rejected
  double c_warn = 21.0;               // C below this warns
  std::optional<std::size_t> k;       // explicit target size (overrides C)
  std::optional<std::size_t> k_minus; // explicit base size of the extension pipeline
  std::size_t a = 2;                  // window radius
  double window_upper_log = 2.0;      // Z_k concentration cut: upper_log * log2 n
  double window_upper_loglog = 5.0;   //   - upper_loglog * log2 log2 n
  double horizon_factor = 100.0;      // T = ceil(horizon_factor * 2^k * log2 n)
  std::size_t trials = 100;
  std::size_t samples = 100;          // inner draws per chaos certificate
  std::size_t samples_per_level = 64; // size-profile estimation effort
  std::size_t graph_seeds = 1;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";
  bool exact = false;
  bool extend = true;
  bool common_random_numbers = false;
  bool quick = false;
  bool force = false;
  std::size_t parallelism = 1;
  double max_fail_rate = 0.05;
  std::uint64_t budget = 10'000'000;

  bool operator==(const ExperimentConfig&) const = default;
};

// Throws ContractViolation naming the offending key.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
// Applies one key = value assignment.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);
std::string to_text(const ExperimentConfig& config);
// Range checks; returns warnings (e.g. C below c_warn).
std::vector<std::string> validate(const ExperimentConfig& config);
// Named presets: "paper-theorem-1.2" (C = 30, lambda = 1, p = 1/2, T factor 100).
void apply_preset(ExperimentConfig& config, const std::string& name);
// Compact JSON object of every field.
std::string to_json(const ExperimentConfig& config);

}  // namespace hardcore
