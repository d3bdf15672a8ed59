#include <algorithm>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "hardcore/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
  std::vector<std::string> criteria;
  hardcore::AcceptanceOptions options;
  options.parallelism = std::max(1u, std::thread::hardware_concurrency());
  bool list = false;
  app.add_option("--criterion", criteria, "run only these criteria (default: all)");
  app.add_flag("--quick", options.quick, "oracle-scale criteria only");
  app.add_option("--work-dir", options.work_dir, "directory for resumable experiment state");
  app.add_option("--parallelism", options.parallelism, "worker threads (never changes results)");
  app.add_option("--seed", options.seed, "master seed");
  app.add_flag("--list", list, "list criteria and exit");
  CLI11_PARSE(app, argc, argv);

  const auto& all = hardcore::acceptance_criteria();
  if (list) {
    for (const auto& c : all) std::cout << c.id << (c.quick ? " [quick]" : "") << "  " << c.title << '\n';
    return 0;
  }
  if (criteria.empty()) {
    for (const auto& c : all) {
      if (!options.quick || c.quick) criteria.push_back(c.id);
    }
  }
  bool ok = true;
  for (const auto& id : criteria) {
    hardcore::CriterionResult r = hardcore::run_criterion(id, options);
    std::cout << hardcore::summary_line(r) << "  [" << r.seconds << " s]" << std::endl;
    std::cout << "  report: " << r.json << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
