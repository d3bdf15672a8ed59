#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardcore/config.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/experiments.hpp"

int main(int argc, char** argv) {
  using namespace hardcore;
  CLI::App app{"Hardcore model experiments on G(n, 1/2)"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string config_file;
  std::vector<std::string> assignments;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> parallelism;
  bool exact = false;
  bool quick = false;
  bool theorem_preset = false;

  app.add_option("command", command, "gen | chaos | glauber-sample | zk | greedy-uniformity | verify")
      ->required()
      ->check(CLI::IsMember({"gen", "chaos", "glauber-sample", "zk", "greedy-uniformity", "verify"}));
  app.add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", assignments, "override one configuration key (key=value)");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--trials", trials, "trials per cell");
  app.add_option("--parallelism", parallelism, "worker threads (never changes results)");
  app.add_flag("--exact", exact, "exact enumeration columns on oracle-scale n");
  app.add_flag("--quick", quick, "verify: oracle-scale criteria only");
  app.add_flag("--paper-theorem-1.2", theorem_preset, "preset C = 30, lambda = 1, p = 1/2, T factor 100");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::kUsage);
  }

  ExperimentConfig config;
  try {
    if (theorem_preset) apply_preset(config, "paper-theorem-1.2");
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      config = parse_config(in, config);
    }
    for (const auto& a : assignments) {
      auto eq = a.find('=');
      if (eq == std::string::npos) throw ContractViolation("--set expects key=value, got '" + a + "'");
      set_config_value(config, a.substr(0, eq), a.substr(eq + 1));
    }
    config.experiment = command;
    if (seed) config.master_seed = *seed;
    if (out) config.out_dir = *out;
    if (trials) config.trials = *trials;
    if (parallelism) config.parallelism = *parallelism;
    if (exact) config.exact = true;
    if (quick) config.quick = true;
    validate(config);
  } catch (const ContractViolation& e) {
    std::cerr << "hardcore: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kUsage);
  }
  return static_cast<int>(run_command(command, config, std::cerr));
}
