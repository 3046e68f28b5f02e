#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhd/divclean.hpp"
#include "mhd/fespace.hpp"
#include "mhd/mesh.hpp"
#include "mhd/thermo.hpp"

namespace mhd {

enum class BoundaryKind {
  Periodic,         ///< periodic in every direction of the problem
  DirichletFrozen,  ///< boundary nodes keep their initial values
};

/// Initial or reference state at a point; only rho, u, p and B are used.
using PrimitiveFunction = std::function<PrimitiveState<double>(const Eigen::Vector2d&)>;
using ExactSolution = std::function<PrimitiveState<double>(const Eigen::Vector2d&, double)>;

/// Named scalar parameters overriding problem defaults ("gamma", "t_final", "p0", ...).
using ProblemOverrides = std::map<std::string, double>;

struct ProblemSpec {
  std::string id;
  int dim = 1;
  Box domain;
  GasModel<double> gas;
  PrimitiveFunction initial;
  BoundaryKind boundary = BoundaryKind::Periodic;
  double t_final = 0.0;
  bool cleaning = false;
  CleaningEnergy cleaning_energy = CleaningEnergy::TotalEnergy;
  int default_cells = 0;  ///< cells per direction of the default mesh
  ExactSolution exact;    ///< empty when no closed-form solution exists

  PeriodicAxes periodic_axes() const;
  bool has_exact() const { return static_cast<bool>(exact); }
};

std::vector<std::string> problem_ids();

/// Builds a registered benchmark. Throws UnknownProblem for an unknown id and
/// ConfigError for an override the problem does not accept.
ProblemSpec make_problem(const std::string& id, const ProblemOverrides& overrides = {});

/// Left and right primitive states of a one-dimensional Riemann problem.
struct RiemannStates {
  PrimitiveState<double> left;
  PrimitiveState<double> right;
  double x0 = 0.5;
};

/// Brio-Wu states.
RiemannStates brio_wu_states();

std::vector<std::string> single_wave_names();

/// Single-wave Riemann data ("contact", "fast_rarefaction", "intermediate_shock",
/// "slow_shock"). Throws UnknownProblem for other names.
RiemannStates single_wave_ic(const std::string& name);

struct VortexParams {
  double rho0 = 1.0;
  Eigen::Vector2d u0{1.0, 1.0};
  double p0 = 1.0;
  Eigen::Vector2d B0{0.1, 0.1};
  double mu = 5.389489439;
};

/// Translating vortex: base state plus perturbations centred at u0 t.
PrimitiveState<double> vortex_exact(double x, double y, double t, const VortexParams& params);

/// Nodal interpolation of the initial condition into conserved variables.
SolutionField interpolate_initial_state(const FESpace& space, const ProblemSpec& problem);

/// Checks rho > 0 and p > 0 of the initial condition at every quadrature point
/// of `space`; throws InadmissibleIC naming the first failing point.
void validate_initial_condition(const FESpace& space, const ProblemSpec& problem);

/// Mesh matching the problem's dimension and domain.
Mesh build_problem_mesh(const ProblemSpec& problem, int cells,
                        TrianglePattern pattern = TrianglePattern::Right);

}  // namespace mhd
