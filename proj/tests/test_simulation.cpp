#include <cmath>

#include "doctest.h"
#include "mhd/errors.hpp"
#include "mhd/simulation.hpp"

namespace {

Eigen::Matrix<double, 1, mhd::kNumComponents> totals(const mhd::Simulation& sim) {
  return sim.mass().lumped.transpose() * sim.state();
}

}  // namespace

TEST_CASE("default settings per problem") {
  CHECK(mhd::default_settings("brio_wu").viscosity.kind == mhd::ViscosityModel::Kind::FirstOrder);
  CHECK(mhd::default_settings("orszag_tang").viscosity.kind == mhd::ViscosityModel::Kind::EntropyViscosity);
  CHECK(mhd::default_settings("vortex").viscosity.kind == mhd::ViscosityModel::Kind::EntropyViscosity);
  CHECK(mhd::default_settings("rotor").viscosity.kind == mhd::ViscosityModel::Kind::FirstOrder);
  CHECK(mhd::default_settings("blast").cfl == 0.15);
  CHECK(mhd::default_settings("rotor").cfl == 0.3);
  CHECK_THROWS_AS(mhd::default_settings("nope"), mhd::UnknownProblem);
}

TEST_CASE("settings validation") {
  auto s = mhd::default_settings("orszag_tang");
  s.cells = 4;
  s.degree = 2;
  CHECK_THROWS_AS(mhd::Simulation{s}, mhd::ConfigError);
  s.mass = mhd::MassTreatment::Consistent;
  CHECK_NOTHROW(mhd::Simulation{s});
  s.degree = 4;
  CHECK_THROWS_AS(mhd::Simulation{s}, mhd::ConfigError);

  auto bw = mhd::default_settings("brio_wu");
  bw.cleaning = true;
  CHECK_THROWS_AS(mhd::Simulation{bw}, mhd::ConfigError);
  bw.cleaning.reset();
  bw.cfl = 0.0;
  CHECK_THROWS_AS(mhd::Simulation{bw}, mhd::ConfigError);
}

TEST_CASE("short Brio-Wu run") {
  auto s = mhd::default_settings("brio_wu");
  s.cells = 80;
  s.t_final = 0.02;
  s.monitor_snapshots = 10;
  mhd::Simulation sim(s);
  CHECK(sim.space().num_dofs() == 81);
  CHECK(sim.scheme() == mhd::SSPScheme::SSPRK33);
  CHECK_FALSE(sim.cleaning());
  const auto before = totals(sim);
  int samples = 0;
  const auto status = sim.run([&](const mhd::Simulation&, int) { ++samples; });
  REQUIRE(status.completed);
  CHECK(status.failure.empty());
  CHECK(sim.time() == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(samples == 11);
  CHECK(sim.history().size() == 11);
  CHECK(sim.history()[5].t == doctest::Approx(0.01).epsilon(1e-14));
  // Waves have not reached the frozen boundaries: mass and energy are conserved.
  const auto after = totals(sim);
  CHECK(after[mhd::kRho] == doctest::Approx(before[mhd::kRho]).epsilon(1e-12));
  CHECK(after[mhd::kEnergy] == doctest::Approx(before[mhd::kEnergy]).epsilon(1e-12));
  CHECK(sim.viscosity().minCoeff() >= 0.0);
  for (const auto& row : sim.history()) CHECK(row.min_s - sim.history().front().min_s >= -1e-12);
}

TEST_CASE("periodic 2D run conserves and keeps B cleaned") {
  auto s = mhd::default_settings("orszag_tang");
  s.cells = 8;
  s.t_final = 0.02;
  s.monitor_snapshots = 2;
  mhd::Simulation sim(s);
  CHECK(sim.cleaning());
  const auto before = totals(sim);
  const auto status = sim.run();
  REQUIRE(status.completed);
  const auto after = totals(sim);
  for (int c : {mhd::kRho, mhd::kMx, mhd::kMy, mhd::kEnergy}) {
    CHECK(std::abs(after[c] - before[c]) < 1e-10 * std::max(1.0, std::abs(before[c])));
  }
  const mhd::DivergenceCleaner cleaner(sim.space(), sim.mass());
  const mhd::VectorField B = sim.state().rightCols<2>();
  CHECK(cleaner.weak_divergence_norm(B) <= 1e-8 * B.norm());
  CHECK(sim.high_order_viscosity().size() == sim.space().num_dofs());
  CHECK((sim.viscosity() - sim.low_order_viscosity()).maxCoeff() <= 0.0);
}

TEST_CASE("failure is reported with the time and step") {
  auto s = mhd::default_settings("blast");
  s.cells = 8;
  s.cfl = 5.0;
  s.viscosity.kind = mhd::ViscosityModel::Kind::None;
  mhd::Simulation sim(s);
  const auto status = sim.run();
  CHECK_FALSE(status.completed);
  CHECK(status.failure.find("step") != std::string::npos);
}
