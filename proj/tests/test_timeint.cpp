#include <cmath>
#include <vector>

#include "doctest.h"
#include "mhd/fespace.hpp"
#include "mhd/problems.hpp"
#include "mhd/timeint.hpp"
#include "oracles.hpp"

namespace {

double decay_error(mhd::SSPScheme scheme, int steps) {
  const double T = 1.0;
  const double dt = T / steps;
  Eigen::VectorXd y(1);
  y[0] = 1.0;
  const auto rhs = [](const Eigen::VectorXd& u, Eigen::VectorXd& out) { out = -u; };
  for (int n = 0; n < steps; ++n) mhd::ssp_step(scheme, rhs, y, dt);
  return std::abs(y[0] - oracle::decay_exact(T));
}

}  // namespace

TEST_CASE("Shu-Osher tableaux are convex combinations") {
  for (auto scheme : {mhd::SSPScheme::SSPRK33, mhd::SSPScheme::SSPRK54}) {
    const auto& tab = mhd::tableau(scheme);
    CHECK(tab.stages() == (scheme == mhd::SSPScheme::SSPRK33 ? 3 : 5));
    for (int i = 0; i < tab.stages(); ++i) {
      double sum = 0.0;
      for (int j = 0; j <= i; ++j) {
        CHECK(tab.alpha[i][j] >= 0.0);
        CHECK(tab.beta[i][j] >= 0.0);
        sum += tab.alpha[i][j];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(mhd::scheme_for_degree(1) == mhd::SSPScheme::SSPRK33);
  CHECK(mhd::scheme_for_degree(2) == mhd::SSPScheme::SSPRK33);
  CHECK(mhd::scheme_for_degree(3) == mhd::SSPScheme::SSPRK54);
  CHECK(mhd::to_string(mhd::SSPScheme::SSPRK54) == "ssprk54");
}

TEST_CASE("observed order on linear decay") {
  const double e33a = decay_error(mhd::SSPScheme::SSPRK33, 20);
  const double e33b = decay_error(mhd::SSPScheme::SSPRK33, 40);
  CHECK(std::log2(e33a / e33b) > 2.9);
  const double e54a = decay_error(mhd::SSPScheme::SSPRK54, 10);
  const double e54b = decay_error(mhd::SSPScheme::SSPRK54, 20);
  CHECK(std::log2(e54a / e54b) > 3.8);
}

TEST_CASE("exact on polynomials up to the order") {
  // y' = t^2 (autonomous form: y = (t, z), t' = 1, z' = t^2) is integrated exactly by a third-order method.
  Eigen::Vector2d y(0.0, 0.0);
  const auto rhs = [](const Eigen::Vector2d& u, Eigen::Vector2d& out) { out = Eigen::Vector2d(1.0, u[0] * u[0]); };
  for (int n = 0; n < 7; ++n) mhd::ssp_step(mhd::SSPScheme::SSPRK33, rhs, y, 0.3);
  CHECK(y[1] == doctest::Approx(std::pow(2.1, 3) / 3.0).epsilon(1e-13));

  Eigen::Vector2d w(0.0, 0.0);
  const auto cubic = [](const Eigen::Vector2d& u, Eigen::Vector2d& out) {
    out = Eigen::Vector2d(1.0, u[0] * u[0] * u[0]);
  };
  for (int n = 0; n < 4; ++n) mhd::ssp_step(mhd::SSPScheme::SSPRK54, cubic, w, 0.25);
  CHECK(w[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("after-stage hook runs once per stage on the new stage value") {
  std::vector<int> stages;
  Eigen::VectorXd y = Eigen::VectorXd::Ones(3);
  const auto rhs = [](const Eigen::VectorXd& u, Eigen::VectorXd& out) { out = Eigen::VectorXd::Ones(u.size()); };
  mhd::ssp_step(mhd::SSPScheme::SSPRK54, rhs, y, 0.1, [&](Eigen::VectorXd& u, int stage) {
    stages.push_back(stage);
    u[0] = 7.0;  // constraint
  });
  CHECK(stages == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(y[0] == 7.0);
  CHECK(y[1] == doctest::Approx(1.1));
}

TEST_CASE("time step from the CFL condition") {
  const auto problem = mhd::make_problem("brio_wu");
  const mhd::FESpace space(mhd::build_problem_mesh(problem, 100), 1);
  const auto mass = mhd::build_mass_operators(space);
  const auto h = mhd::mesh_size_field(space, mass);
  const auto U = mhd::interpolate_initial_state(space, problem);

  double speed = 0.0;
  for (int i = 0; i < U.rows(); ++i) {
    const auto s = mhd::ConservedState<double>::from_vector(U.row(i).transpose());
    speed = std::max(speed, oracle::fd_max_eigenvalue(s, {1.0, 0.0}, problem.gas));
  }
  const double dt = mhd::compute_dt(space, U, h, 0.3, problem.gas);
  CHECK(dt == doctest::Approx(0.3 * h.minCoeff() / speed).epsilon(1e-5));
  CHECK(mhd::compute_dt(space, U, h, 0.3, problem.gas, 0.1 - 1e-5, 0.1) == doctest::Approx(1e-5));
}
