#include "runner.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "mhd/errors.hpp"
#include "output.hpp"

#ifndef MHDFEM_VERSION
#define MHDFEM_VERSION "unknown"
#endif
#ifndef MHDFEM_GIT_COMMIT
#define MHDFEM_GIT_COMMIT "unknown"
#endif

namespace mhdcli {

namespace fs = std::filesystem;

bool CaseOutcome::completed() const {
  if (runs.empty()) return false;
  for (const auto& r : runs) {
    if (!r.status.completed) return false;
  }
  return true;
}

std::vector<std::pair<std::string, std::string>> provenance() {
  return {{"version", MHDFEM_VERSION},
          {"git_commit", MHDFEM_GIT_COMMIT},
          {"compiler", __VERSION__}};
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw mhd::Error("cannot write " + path.string());
  return out;
}

RunOutcome run_one(const RunConfig& config, const fs::path& dir, std::ostream& log) {
  fs::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();
  mhd::Simulation sim(config.settings);

  const int samples = config.settings.monitor_snapshots;
  const std::vector<int> wanted = snapshot_indices(samples, config.output_snapshots);
  std::size_t next = 0;
  int last_written = -1;
  const auto on_sample = [&](const mhd::Simulation& s, int index) {
    if (next < wanted.size() && index == wanted[next]) {
      write_snapshot(dir, s, index, config.write_vtk);
      last_written = index;
      ++next;
    }
  };
  RunOutcome outcome;
  outcome.status = sim.run(on_sample);
  outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.cells = config.settings.cells > 0 ? config.settings.cells : sim.problem().default_cells;
  outcome.dofs = sim.space().num_dofs();
  outcome.steps = sim.steps();
  outcome.time = sim.time();
  outcome.history = sim.history();
  outcome.final_primitives = mhd::primitive_fields(sim.state(), sim.problem().gas);
  outcome.final_viscosity = sim.viscosity();
  outcome.final_low_order_viscosity = sim.low_order_viscosity();

  {
    auto out = open_output(dir / "entropy_history.csv");
    mhd::write_entropy_history_csv(out, outcome.history);
  }
  if (!outcome.status.completed) {
    write_snapshot(dir, sim, static_cast<int>(outcome.history.size()), config.write_vtk);
    auto out = open_output(dir / "failure.txt");
    out << outcome.status.failure << '\n';
    log << "  run failed: " << outcome.status.failure << '\n';
  } else if (last_written != samples) {
    write_snapshot(dir, sim, samples, config.write_vtk);
  }
  if (outcome.status.completed && sim.problem().has_exact()) {
    outcome.errors = mhd::error_norms(sim.space(), sim.state(), sim.problem().exact, sim.time(),
                                      sim.problem().gas);
  }
  log << "  " << sim.problem().id << ": " << outcome.dofs << " DOFs, " << outcome.steps << " steps, t = "
      << outcome.time << ", " << std::fixed << std::setprecision(2) << outcome.wall_seconds << " s"
      << std::defaultfloat << std::setprecision(6) << '\n';
  return outcome;
}

void write_manifest(const fs::path& dir, const RunConfig& config, const CaseOutcome& outcome) {
  auto out = open_output(dir / "run_manifest.txt");
  out << "# run configuration (every default resolved)\n";
  for (const auto& [k, v] : describe(config)) out << k << " = " << v << '\n';
  out << "\n# provenance\n";
  for (const auto& [k, v] : provenance()) out << k << " = " << v << '\n';
  out << "\n# result\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < outcome.runs.size(); ++i) {
    const RunOutcome& r = outcome.runs[i];
    const std::string prefix = outcome.runs.size() > 1 ? "run" + std::to_string(i) + "." : "";
    out << prefix << "cells = " << r.cells << '\n';
    out << prefix << "dofs = " << r.dofs << '\n';
    out << prefix << "steps = " << r.steps << '\n';
    out << prefix << "final_time = " << r.time << '\n';
    out << prefix << "wall_time_s = " << std::setprecision(6) << r.wall_seconds << std::setprecision(17) << '\n';
    out << prefix << "status = " << (r.status.completed ? "completed" : "failed") << '\n';
    if (!r.status.completed) out << prefix << "failure = " << r.status.failure << '\n';
  }
}

}  // namespace

CaseOutcome run_case(const RunConfig& config, const fs::path& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  CaseOutcome outcome;
  if (config.sweep.empty()) {
    outcome.runs.push_back(run_one(config, out_dir, log));
  } else {
    for (int cells : config.sweep) {
      RunConfig member = config;
      member.settings.cells = cells;
      member.sweep.clear();
      outcome.runs.push_back(run_one(member, out_dir / ("cells_" + std::to_string(cells)), log));
      if (!outcome.runs.back().status.completed) break;
    }
  }
  write_manifest(out_dir, config, outcome);

  std::vector<mhd::ErrorReport> reports;
  for (const auto& r : outcome.runs) {
    if (r.errors) reports.push_back(*r.errors);
  }
  if (!reports.empty()) {
    const auto rows = mhd::convergence_table(reports);
    auto out = open_output(out_dir / "errors.csv");
    mhd::write_errors_csv(out, rows);
    mhd::write_convergence_text(log, rows);
  }
  return outcome;
}

}  // namespace mhdcli
