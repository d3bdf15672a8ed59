#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hardcore {

struct AcceptanceOptions {
  bool quick = false;               // oracle-scale criteria only
  std::string work_dir = "acceptance-work";  // manifests of resumable criteria
  std::size_t parallelism = 1;
  std::uint64_t seed = 1;
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;  // measured values against thresholds
  std::string json;    // {check_name, parameters, verdict, counterexample?}
  double seconds = 0.0;
};

struct CriterionInfo {
  std::string id;
  std::string title;
  bool quick;  // part of the --quick subset
};

const std::vector<CriterionInfo>& acceptance_criteria();
CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);
// "PASS <id>: <title> -- <detail>" or "FAIL ...".
std::string summary_line(const CriterionResult& result);

}  // namespace hardcore
