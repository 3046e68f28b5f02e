#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mhd/diagnostics.hpp"
#include "mhd/divclean.hpp"
#include "mhd/fespace.hpp"
#include "mhd/fluxes.hpp"
#include "mhd/problems.hpp"
#include "mhd/rhs.hpp"
#include "mhd/timeint.hpp"
#include "mhd/viscosity.hpp"

namespace mhd {

struct SimulationSettings {
  std::string problem = "brio_wu";
  ProblemOverrides overrides;
  int cells = 0;  ///< cells per direction; 0 selects the problem default
  std::optional<TrianglePattern> pattern;  ///< default: crossed for the vortex, right otherwise
  int degree = 1;
  ViscousFluxChoice flux = ViscousFluxChoice::monolithic();
  ViscosityModel viscosity;
  double cfl = 0.3;
  MassTreatment mass = MassTreatment::Lumped;
  std::optional<bool> cleaning;  ///< default: the problem's choice (never in 1D)
  PoissonOperator poisson = PoissonOperator::Compatible;
  std::optional<CleaningEnergy> cleaning_energy;  ///< default: the problem's choice
  std::optional<double> t_final;
  std::optional<SSPScheme> scheme;  ///< default: scheme_for_degree(degree)
  int monitor_snapshots = 1000;     ///< evenly spaced monitor samples after t = 0

  /// Throws ConfigError when inconsistent with the problem.
  void validate(const ProblemSpec& problem) const;
};

/// Settings used by the benchmark runs: first-order viscosity in 1D, on the
/// rotor and on the blast (which also uses cfl = 0.15), entropy viscosity otherwise.
SimulationSettings default_settings(const std::string& problem);

struct RunStatus {
  bool completed = false;
  std::string failure;  ///< empty on success
};

/// Explicit time integration of one benchmark problem.
///
/// Each step freezes the viscosity at the start of the step, advances with the
/// SSP scheme, and after every stage re-imposes Dirichlet values, cleans the
/// magnetic field when enabled, and checks nodal admissibility. Steps are
/// shortened to land exactly on the monitor sample times.
class Simulation {
 public:
  explicit Simulation(SimulationSettings settings);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  const SimulationSettings& settings() const { return settings_; }
  const ProblemSpec& problem() const { return problem_; }
  const FESpace& space() const { return *space_; }
  const MassOperators& mass() const { return *mass_; }
  const SolutionField& state() const { return U_; }
  const ScalarField& mesh_size() const { return h_; }
  double time() const { return t_; }
  double final_time() const { return t_final_; }
  int steps() const { return steps_; }
  SSPScheme scheme() const { return scheme_; }
  bool cleaning() const { return cleaner_ != nullptr; }

  /// Viscosity fields used in the most recent step.
  const ScalarField& viscosity() const { return eps_; }
  const ScalarField& low_order_viscosity() const { return eps_L_; }
  const ScalarField& high_order_viscosity() const { return eps_H_; }

  const std::vector<MonitorRow>& history() const { return history_; }

  /// Advances one step; returns the step size taken.
  double step();
  bool finished() const { return t_ >= t_final_; }

  /// Runs to the final time. `on_sample(sim, index)` is called for every
  /// monitor sample, index 0 being the initial state. Errors from the library
  /// stop the run and are reported in the status.
  RunStatus run(const std::function<void(const Simulation&, int)>& on_sample = {});

 private:
  void update_viscosity();
  void after_stage(SolutionField& U) const;
  void record_sample();

  SimulationSettings settings_;
  ProblemSpec problem_;
  std::unique_ptr<FESpace> space_;
  std::unique_ptr<MassOperators> mass_;
  std::unique_ptr<Constraints> constraints_;
  std::unique_ptr<SemidiscreteOperator> operator_;
  std::unique_ptr<DivergenceCleaner> cleaner_;
  SSPScheme scheme_;
  CleaningEnergy cleaning_energy_ = CleaningEnergy::TotalEnergy;
  ScalarField h_;
  SolutionField U_;
  double t_ = 0.0;
  double t_final_ = 0.0;
  int steps_ = 0;
  ScalarField eps_, eps_L_, eps_H_;
  EntropyHistory entropy_history_;
  std::vector<MonitorRow> history_;
  int next_sample_ = 1;
  std::function<void(const Simulation&, int)> on_sample_;
};

/// Throws AdmissibilityError naming the first node with rho <= 0 or rho e <= 0.
void check_admissible(const SolutionField& U);

}  // namespace mhd
