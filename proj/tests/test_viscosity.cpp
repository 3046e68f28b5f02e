#include <cmath>

#include "doctest.h"
#include "mhd/errors.hpp"
#include "mhd/problems.hpp"
#include "mhd/viscosity.hpp"
#include "oracles.hpp"

using mhd::ScalarField;

TEST_CASE("first-order viscosity is c_max h times the local wave speed") {
  const auto problem = mhd::make_problem("brio_wu");
  const mhd::FESpace space(mhd::build_problem_mesh(problem, 50), 1);
  const auto mass = mhd::build_mass_operators(space);
  const auto h = mhd::mesh_size_field(space, mass);
  const auto U = mhd::interpolate_initial_state(space, problem);
  const ScalarField eps = mhd::first_order_viscosity(space, U, h, problem.gas, 0.5);
  for (int i = 0; i < U.rows(); ++i) {
    const auto s = mhd::ConservedState<double>::from_vector(U.row(i).transpose());
    const double speed = oracle::fd_max_eigenvalue(s, {1.0, 0.0}, problem.gas);
    CHECK(eps[i] == doctest::Approx(0.5 * h[i] * speed).epsilon(1e-5));
  }
}

TEST_CASE("nodal maximum speed takes both directions in 2D") {
  const auto problem = mhd::make_problem("orszag_tang");
  const mhd::FESpace space(mhd::build_problem_mesh(problem, 4), 1, problem.periodic_axes());
  const auto U = mhd::interpolate_initial_state(space, problem);
  const ScalarField speed = mhd::nodal_max_speed(space, U, problem.gas);
  for (int i = 0; i < U.rows(); ++i) {
    const auto s = mhd::ConservedState<double>::from_vector(U.row(i).transpose());
    const double expected = std::max(oracle::fd_max_eigenvalue(s, {1.0, 0.0}, problem.gas),
                                     oracle::fd_max_eigenvalue(s, {0.0, 1.0}, problem.gas));
    CHECK(speed[i] == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("entropy field and flux") {
  mhd::GasModel<double> gas{1.4, 1.0};
  mhd::SolutionField U(1, mhd::kNumComponents);
  const auto state = mhd::conserved_from_primitive(2.0, mhd::Vector2<double>(0.5, -1.0), 3.0,
                                                   mhd::Vector2<double>(0.2, 0.1), gas);
  U.row(0) = state.to_vector().transpose();
  const ScalarField S = mhd::entropy_field(U, gas);
  const double expected = 2.0 * std::log(3.0 / std::pow(2.0, 1.4)) / 0.4;
  CHECK(S[0] == doctest::Approx(expected).epsilon(1e-13));
  const mhd::VectorField F = mhd::entropy_flux_field(U, S);
  CHECK(F(0, 0) == doctest::Approx(0.5 * expected));
  CHECK(F(0, 1) == doctest::Approx(-1.0 * expected));
}

TEST_CASE("entropy history derivative") {
  mhd::EntropyHistory history;
  CHECK_FALSE(history.ready());
  CHECK_THROWS_AS(history.time_derivative(), mhd::Error);

  const auto level = [](double t) {
    ScalarField S(2);
    S << t * t, 3.0 * t + 1.0;
    return S;
  };
  history.push(0.0, level(0.0));
  history.push(0.1, level(0.1));
  REQUIRE(history.ready());
  CHECK(history.time_derivative()[1] == doctest::Approx(3.0));
  CHECK(history.time_derivative()[0] == doctest::Approx(0.1));

  // Variable-step BDF2 is exact on quadratics.
  history.push(0.35, level(0.35));
  CHECK(history.size() == 3);
  CHECK(history.time_derivative()[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(history.time_derivative()[1] == doctest::Approx(3.0).epsilon(1e-12));
  history.push(0.4, level(0.4));
  CHECK(history.size() == 3);
  CHECK(history.time_derivative()[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(history.latest()[1] == doctest::Approx(2.2));
}

TEST_CASE("entropy residual of an exactly represented field") {
  const mhd::FESpace space(mhd::build_interval_mesh(10, 0.0, 1.0), 1);
  const int n = space.num_dofs();
  const ScalarField dSdt = ScalarField::Constant(n, 2.0);
  mhd::VectorField flux = mhd::VectorField::Zero(n, 2);
  for (int i = 0; i < n; ++i) flux(i, 0) = 3.0 * space.dof_coordinates()(0, i);
  const ScalarField R = mhd::entropy_residual(space, dSdt, flux);
  for (int i = 0; i < n; ++i) {
    const double x = space.dof_coordinates()(0, i);
    const bool end = x < 1e-12 || x > 1.0 - 1e-12;
    CHECK(R[i] == doctest::Approx(end ? 2.5 : 5.0).epsilon(1e-12));
  }

  const ScalarField zero = mhd::entropy_residual(space, ScalarField::Zero(n), mhd::VectorField::Zero(n, 2));
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("entropy viscosity normalizations") {
  ScalarField R(3), h(3), eps_L(3), lumped(3), S(3);
  R << 1.0, -2.0, 0.5;
  h << 0.1, 0.1, 0.1;
  eps_L << 1.0, 0.01, 1.0;
  lumped << 1.0, 1.0, 2.0;
  S << 0.0, 1.0, 3.0;

  ScalarField eps_H;
  // Lumped mean of S is 1.75, so D = 1.75.
  ScalarField eps = mhd::entropy_viscosity(R, h, eps_L, lumped, S, 1.0,
                                           mhd::ResidualNormalization::EntropyDeviation, &eps_H);
  CHECK(eps_H[0] == doctest::Approx(0.01 / 1.75));
  CHECK(eps_H[1] == doctest::Approx(0.02 / 1.75));
  CHECK(eps[0] == doctest::Approx(0.01 / 1.75));
  CHECK(eps[1] == doctest::Approx(0.01));
  CHECK(eps[2] == doctest::Approx(0.005 / 1.75));

  // Lumped mean of R is 0; Rbar = 2; D = max |R - 2| = 4.
  eps = mhd::entropy_viscosity(R, h, eps_L, lumped, S, 2.0, mhd::ResidualNormalization::ResidualDeviation,
                               &eps_H);
  CHECK(eps_H[0] == doctest::Approx(0.005));
  CHECK(eps_H[1] == doctest::Approx(0.01));
  CHECK(eps_H[2] == doctest::Approx(0.0025));
  CHECK(eps[1] == doctest::Approx(0.01));

  // Constant entropy: no normalization available, no high-order viscosity.
  eps = mhd::entropy_viscosity(R, h, eps_L, lumped, ScalarField::Constant(3, 4.0), 1.0,
                               mhd::ResidualNormalization::EntropyDeviation, &eps_H);
  CHECK(eps_H.cwiseAbs().maxCoeff() == 0.0);
  CHECK(eps.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("viscosity model validation") {
  mhd::ViscosityModel model;
  CHECK_NOTHROW(model.validate());
  model.c_max = -1.0;
  CHECK_THROWS_AS(model.validate(), mhd::ConfigError);
  model.c_max = 0.5;
  model.c_E = 0.0;
  CHECK_THROWS_AS(model.validate(), mhd::ConfigError);
}
