#include "mhd/simulation.hpp"

#include <cmath>
#include <sstream>

#include "mhd/errors.hpp"

namespace mhd {

void SimulationSettings::validate(const ProblemSpec& problem) const {
  if (degree < 1 || degree > 3) throw ConfigError("degree must be 1, 2 or 3");
  if (cells < 0) throw ConfigError("cells must be positive");
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (monitor_snapshots < 1) throw ConfigError("monitor_snapshots must be at least 1");
  if (t_final && !(*t_final > 0.0)) throw ConfigError("t_final must be positive");
  viscosity.validate();
  if (problem.dim == 1 && cleaning.value_or(false)) {
    throw ConfigError("divergence cleaning is only available in 2D");
  }
  if (problem.dim == 2 && degree == 2 && mass == MassTreatment::Lumped) {
    throw ConfigError("lumped mass is singular for P2 triangles; use mass = consistent");
  }
}

SimulationSettings default_settings(const std::string& problem) {
  SimulationSettings s;
  s.problem = problem;
  const ProblemSpec spec = make_problem(problem);
  s.viscosity.kind =
      spec.dim == 1 ? ViscosityModel::Kind::FirstOrder : ViscosityModel::Kind::EntropyViscosity;
  // Low-beta problems: the high-order viscosity loses positivity within the first steps.
  if (problem == "rotor" || problem == "blast") s.viscosity.kind = ViscosityModel::Kind::FirstOrder;
  if (problem == "blast") s.cfl = 0.15;
  return s;
}

void check_admissible(const SolutionField& U) {
  for (int i = 0; i < U.rows(); ++i) {
    const auto state = ConservedState<double>::from_vector(U.row(i).transpose());
    if (!(state.rho > 0.0)) {
      std::ostringstream os;
      os << "nonpositive density " << state.rho << " at node " << i;
      throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveDensity, os.str());
    }
    const double rho_e = internal_energy_density(state);
    if (!(rho_e > 0.0)) {
      std::ostringstream os;
      os << "nonpositive internal energy " << rho_e << " at node " << i;
      throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveInternalEnergy, os.str());
    }
  }
}

Simulation::Simulation(SimulationSettings settings)
    : settings_(std::move(settings)), problem_(make_problem(settings_.problem, settings_.overrides)) {
  settings_.validate(problem_);
  if (settings_.t_final) problem_.t_final = *settings_.t_final;
  t_final_ = problem_.t_final;

  const int cells = settings_.cells > 0 ? settings_.cells : problem_.default_cells;
  const TrianglePattern pattern = settings_.pattern.value_or(
      problem_.id == "vortex" ? TrianglePattern::Crossed : TrianglePattern::Right);
  space_ = std::make_unique<FESpace>(build_problem_mesh(problem_, cells, pattern), settings_.degree,
                                     problem_.periodic_axes());
  mass_ = std::make_unique<MassOperators>(build_mass_operators(*space_));
  h_ = mesh_size_field(*space_, *mass_);

  validate_initial_condition(*space_, problem_);
  U_ = interpolate_initial_state(*space_, problem_);

  if (problem_.boundary == BoundaryKind::DirichletFrozen) {
    constraints_ = std::make_unique<Constraints>(*space_);
    const std::vector<int> markers =
        problem_.dim == 1 ? std::vector<int>{kLeft, kRight}
                          : std::vector<int>{kLeft, kRight, kBottom, kTop};
    for (int marker : markers) constraints_->add_dirichlet_frozen(marker, U_);
  }
  operator_ = std::make_unique<SemidiscreteOperator>(*space_, *mass_, problem_.gas, settings_.flux,
                                                     settings_.mass, constraints_.get());
  const bool clean = problem_.dim == 2 && settings_.cleaning.value_or(problem_.cleaning);
  if (clean) {
    cleaner_ = std::make_unique<DivergenceCleaner>(*space_, *mass_, settings_.poisson);
  }
  cleaning_energy_ = settings_.cleaning_energy.value_or(problem_.cleaning_energy);
  scheme_ = settings_.scheme.value_or(scheme_for_degree(settings_.degree));

  check_admissible(U_);
  const ScalarField zero = ScalarField::Zero(space_->num_dofs());
  eps_ = eps_L_ = eps_H_ = zero;
}

void Simulation::update_viscosity() {
  const ViscosityModel& model = settings_.viscosity;
  const int n = space_->num_dofs();
  if (model.kind == ViscosityModel::Kind::None) {
    eps_ = eps_L_ = eps_H_ = ScalarField::Zero(n);
    return;
  }
  eps_L_ = first_order_viscosity(*space_, U_, h_, problem_.gas, model.c_max);
  if (model.kind == ViscosityModel::Kind::FirstOrder) {
    eps_ = eps_L_;
    eps_H_ = eps_L_;
    return;
  }
  const ScalarField S = entropy_field(U_, problem_.gas);
  entropy_history_.push(t_, S);
  if (!entropy_history_.ready()) {
    eps_ = eps_L_;
    eps_H_ = eps_L_;
    return;
  }
  const ScalarField R =
      entropy_residual(*space_, entropy_history_.time_derivative(), entropy_flux_field(U_, S));
  eps_ = entropy_viscosity(R, h_, eps_L_, mass_->lumped, S, model.c_E, model.normalization, &eps_H_);
}

void Simulation::after_stage(SolutionField& U) const {
  if (constraints_) constraints_->apply(U);
  if (cleaner_) cleaner_->clean_state(U, nullptr, cleaning_energy_);
  check_admissible(U);
}

void Simulation::record_sample() {
  const VectorField B = U_.middleCols<2>(kBx);
  history_.push_back(min_entropy_monitor(U_, t_, problem_.gas, divergence_l2(*space_, B)));
}

double Simulation::step() {
  if (finished()) return 0.0;
  update_viscosity();
  const int n_samples = settings_.monitor_snapshots;
  const double t_sample = t_final_ * next_sample_ / n_samples;
  double dt = compute_dt(*space_, U_, h_, settings_.cfl, problem_.gas, t_, t_final_);
  dt = std::min(dt, t_sample - t_);

  const auto rhs = [this](const SolutionField& U, SolutionField& out) {
    operator_->evaluate(U, eps_, out);
  };
  ssp_step(scheme_, rhs, U_, dt, [this](SolutionField& U, int) { after_stage(U); });
  t_ += dt;
  ++steps_;

  if (std::abs(t_ - t_sample) <= 1e-12 * t_final_) {
    t_ = t_sample;
    record_sample();
    if (on_sample_) on_sample_(*this, next_sample_);
    ++next_sample_;
  }
  return dt;
}

RunStatus Simulation::run(const std::function<void(const Simulation&, int)>& on_sample) {
  on_sample_ = on_sample;
  RunStatus status;
  try {
    if (history_.empty()) {
      record_sample();
      if (on_sample_) on_sample_(*this, 0);
    }
    while (!finished()) step();
    status.completed = true;
  } catch (const Error& e) {
    std::ostringstream os;
    os << e.what() << " (t = " << t_ << ", step " << steps_ + 1 << ")";
    status.failure = os.str();
  }
  on_sample_ = {};
  return status;
}

}  // namespace mhd
