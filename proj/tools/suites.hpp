#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace mhdcli {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<std::string> suite_names();

/// Runs a canned set of configurations into `out_dir/<member>/`, evaluates the
/// suite's criteria and writes `out_dir/suite_summary.txt`. `extra` is applied
/// on top of every member configuration (e.g. a coarser sweep). Failing members
/// are reported and the remaining members still run.
std::vector<CriterionResult> run_suite(const std::string& name, const KeyValues& extra,
                                       const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace mhdcli
