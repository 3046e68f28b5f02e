#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhd/diagnostics.hpp"
#include "run_config.hpp"

namespace mhdcli {

/// Outcome of one simulation.
struct RunOutcome {
  int cells = 0;
  int dofs = 0;
  int steps = 0;
  double time = 0.0;
  double wall_seconds = 0.0;
  mhd::RunStatus status;
  std::vector<mhd::MonitorRow> history;
  std::optional<mhd::ErrorReport> errors;  ///< against the exact solution, when one exists
  Eigen::Matrix<double, Eigen::Dynamic, 6> final_primitives;  ///< rho, u_x, u_y, p, B_x, B_y
  mhd::ScalarField final_viscosity;
  mhd::ScalarField final_low_order_viscosity;
};

/// Outcome of a single run or of every mesh of a sweep.
struct CaseOutcome {
  std::vector<RunOutcome> runs;
  bool completed() const;
};

/// Runs `config` and writes run_manifest.txt, snapshot files, entropy_history.csv
/// and (with an exact solution) errors.csv into `out_dir`. A sweep writes each
/// mesh into cells_<n>/ and the convergence table into `out_dir`. A failed run
/// keeps its partial outputs, writes its last state and failure.txt.
CaseOutcome run_case(const RunConfig& config, const std::filesystem::path& out_dir,
                     std::ostream& log);

/// Provenance lines shared by every manifest.
std::vector<std::pair<std::string, std::string>> provenance();

}  // namespace mhdcli
