#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhd/problems.hpp"
#include "mhd/rhs.hpp"
#include "mhd/viscosity.hpp"
#include "oracles.hpp"

using mhd::ScalarField;
using mhd::SolutionField;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

mhd::PrimitiveState<double> smooth_1d(double x) {
  mhd::PrimitiveState<double> P;
  P.rho = 1.0 + 0.2 * std::sin(kTwoPi * x);
  P.u = {0.5 + 0.1 * std::cos(kTwoPi * x), 0.2};
  P.p = 1.0 + 0.1 * std::cos(kTwoPi * x);
  P.B = {0.75, 0.3 * std::cos(kTwoPi * x)};
  return P;
}

mhd::StateVector<double> smooth_flux_x(double x, const mhd::GasModel<double>& gas) {
  const auto P = smooth_1d(x);
  const auto U = mhd::conserved_from_primitive(P.rho, P.u, P.p, P.B, gas);
  return mhd::inviscid_flux(U, gas).total().col(0);
}

SolutionField interpolate_state(const mhd::FESpace& space,
                                const std::function<mhd::PrimitiveState<double>(const Eigen::Vector2d&)>& f,
                                const mhd::GasModel<double>& gas) {
  SolutionField U(space.num_dofs(), mhd::kNumComponents);
  for (int i = 0; i < space.num_dofs(); ++i) {
    const auto P = f(space.dof_coordinates().col(i));
    U.row(i) = mhd::conserved_from_primitive(P.rho, P.u, P.p, P.B, gas).to_vector().transpose();
  }
  return U;
}

/// Max nodal deviation of dU/dt from -dF/dx computed by central differences of the exact flux.
double divergence_error(int cells) {
  const mhd::GasModel<double> gas{5.0 / 3.0, 1.0};
  const mhd::FESpace space(mhd::build_interval_mesh(cells, 0.0, 1.0), 1, {true, false});
  const auto mass = mhd::build_mass_operators(space);
  const mhd::SemidiscreteOperator op(space, mass, gas, mhd::ViscousFluxChoice::monolithic(),
                                     mhd::MassTreatment::Lumped);
  const SolutionField U = interpolate_state(space, [](const Eigen::Vector2d& x) { return smooth_1d(x[0]); }, gas);
  SolutionField dUdt;
  op.evaluate(U, ScalarField::Zero(space.num_dofs()), dUdt);
  double err = 0.0;
  const double d = 1e-5;
  for (int i = 0; i < space.num_dofs(); ++i) {
    const double x = space.dof_coordinates()(0, i);
    const mhd::StateVector<double> dFdx = (smooth_flux_x(x + d, gas) - smooth_flux_x(x - d, gas)) / (2.0 * d);
    err = std::max(err, (dUdt.row(i).transpose() + dFdx).cwiseAbs().maxCoeff());
  }
  return err;
}

}  // namespace

TEST_CASE("free-stream preservation") {
  const mhd::GasModel<double> gas{5.0 / 3.0, 1.0};
  const auto state = mhd::conserved_from_primitive(1.3, mhd::Vector2<double>(0.4, -0.7), 0.9,
                                                   mhd::Vector2<double>(0.3, 0.5), gas);
  for (int degree : {1, 2, 3}) {
    const mhd::FESpace space(mhd::build_triangulated_rectangle(4, 4, {0, 1, 0, 1}), degree, {true, true});
    const auto mass = mhd::build_mass_operators(space);
    const auto treatment = degree == 1 ? mhd::MassTreatment::Lumped : mhd::MassTreatment::Consistent;
    const mhd::SemidiscreteOperator op(space, mass, gas, mhd::ViscousFluxChoice::resistive(1.0), treatment);
    SolutionField U(space.num_dofs(), mhd::kNumComponents);
    U.rowwise() = state.to_vector().transpose();
    SolutionField dUdt;
    op.evaluate(U, ScalarField::Constant(space.num_dofs(), 0.05), dUdt);
    CHECK(dUdt.cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("global conservation on a periodic mesh") {
  const auto problem = mhd::make_problem("orszag_tang");
  const mhd::FESpace space(mhd::build_problem_mesh(problem, 6), 1, problem.periodic_axes());
  const auto mass = mhd::build_mass_operators(space);
  const auto h = mhd::mesh_size_field(space, mass);
  const auto U = mhd::interpolate_initial_state(space, problem);
  const ScalarField eps = mhd::first_order_viscosity(space, U, h, problem.gas);
  for (const auto flux : {mhd::ViscousFluxChoice::monolithic(), mhd::ViscousFluxChoice::resistive(1.0, 0.3)}) {
    const mhd::SemidiscreteOperator op(space, mass, problem.gas, flux, mhd::MassTreatment::Lumped);
    SolutionField R;
    op.residual(U, eps, R);
    const double scale = R.cwiseAbs().maxCoeff();
    REQUIRE(scale > 0.0);
    for (int c = 0; c < mhd::kNumComponents; ++c) CHECK(std::abs(R.col(c).sum()) < 1e-13 * scale * R.rows());
  }
}

TEST_CASE("consistent mass solve") {
  const auto problem = mhd::make_problem("orszag_tang");
  const mhd::FESpace space(mhd::build_problem_mesh(problem, 4), 2, problem.periodic_axes());
  const auto mass = mhd::build_mass_operators(space);
  const auto U = mhd::interpolate_initial_state(space, problem);
  const mhd::SemidiscreteOperator op(space, mass, problem.gas, mhd::ViscousFluxChoice::monolithic(),
                                     mhd::MassTreatment::Consistent);
  const ScalarField eps = ScalarField::Constant(space.num_dofs(), 0.01);
  SolutionField R, dUdt;
  op.residual(U, eps, R);
  op.evaluate(U, eps, dUdt);
  CHECK((mass.consistent * dUdt - R).cwiseAbs().maxCoeff() < 1e-10 * R.cwiseAbs().maxCoeff());
}

TEST_CASE("constrained rows have zero time derivative") {
  const auto problem = mhd::make_problem("brio_wu");
  const mhd::FESpace space(mhd::build_problem_mesh(problem, 20), 1);
  const auto mass = mhd::build_mass_operators(space);
  SolutionField U = mhd::interpolate_initial_state(space, problem);
  U(0, mhd::kMx) = 0.3;  // a boundary row that would otherwise move
  mhd::Constraints constraints(space);
  constraints.add_dirichlet_frozen(mhd::kLeft, U);
  constraints.add_dirichlet_frozen(mhd::kRight, U);
  const mhd::SemidiscreteOperator op(space, mass, problem.gas, mhd::ViscousFluxChoice::monolithic(),
                                     mhd::MassTreatment::Lumped, &constraints);
  SolutionField dUdt;
  op.evaluate(U, ScalarField::Constant(space.num_dofs(), 0.01), dUdt);
  for (int dof : constraints.dirichlet_dofs()) CHECK(dUdt.row(dof).cwiseAbs().maxCoeff() == 0.0);
  CHECK(dUdt.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("nodal time derivative converges to minus the flux divergence") {
  const double e1 = divergence_error(40);
  const double e2 = divergence_error(80);
  CHECK(e2 < 0.05);
  CHECK(std::log2(e1 / e2) > 1.8);
}

TEST_CASE("point evaluation of state and gradient") {
  const mhd::FESpace space(mhd::build_triangulated_rectangle(3, 3, {0, 1, 0, 1}), 2);
  SolutionField U(space.num_dofs(), mhd::kNumComponents);
  for (int i = 0; i < space.num_dofs(); ++i) {
    const Eigen::Vector2d x = space.dof_coordinates().col(i);
    for (int c = 0; c < mhd::kNumComponents; ++c) U(i, c) = 1.0 + c * x[0] + x[0] * x[1];
  }
  const auto& tab = space.basis();
  for (int cell : {0, 7, 17}) {
    for (int q = 0; q < tab.rule.size(); ++q) {
      const auto ps = mhd::evaluate_at(space, tab, U, cell, q);
      const Eigen::Vector2d x = space.map_to_physical(cell, tab.rule.points.col(q));
      for (int c = 0; c < mhd::kNumComponents; ++c) {
        CHECK(ps.U[c] == doctest::Approx(1.0 + c * x[0] + x[0] * x[1]).epsilon(1e-12));
        CHECK(ps.grad(c, 0) == doctest::Approx(c + x[1]).epsilon(1e-12));
        CHECK(ps.grad(c, 1) == doctest::Approx(x[0]).epsilon(1e-12));
      }
    }
  }
}
