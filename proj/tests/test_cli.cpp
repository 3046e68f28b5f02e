#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "mhd/errors.hpp"
#include "output.hpp"
#include "run_config.hpp"

namespace {

std::string value_of(const mhdcli::RunConfig& config, const std::string& key) {
  for (const auto& [k, v] : mhdcli::describe(config)) {
    if (k == key) return v;
  }
  return "<missing>";
}

}  // namespace

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# rotor study\n"
      "problem = rotor   # trailing comment\n"
      "cells=64\n"
      "\n"
      "[viscosity]\n"
      "c_max = 0.25\n"
      "[flux]\n"
      "kappa = 0\n");
  const auto values = mhdcli::parse_config(in);
  CHECK(values.at("problem") == "rotor");
  CHECK(values.at("cells") == "64");
  CHECK(values.at("viscosity.c_max") == "0.25");
  CHECK(values.at("flux.kappa") == "0");

  std::istringstream bad("[open\n");
  CHECK_THROWS_AS(mhdcli::parse_config(bad), mhd::ConfigError);
  std::istringstream no_eq("cells 64\n");
  CHECK_THROWS_AS(mhdcli::parse_config(no_eq), mhd::ConfigError);
}

TEST_CASE("resolving a configuration") {
  mhdcli::KeyValues values{{"problem", "brio_wu"}, {"cells", "320"}};
  mhdcli::apply_assignment(values, "flux = resistive");
  mhdcli::apply_assignment(values, "flux.kappa=0");
  mhdcli::apply_assignment(values, "sweep=160,320");
  const auto config = mhdcli::resolve_config(values);
  CHECK(config.settings.cells == 320);
  CHECK(config.settings.flux.kind == mhd::ViscousFluxKind::Resistive);
  CHECK(config.settings.flux.kappa_factor == 0.0);
  CHECK(config.sweep == std::vector<int>{160, 320});
  CHECK(value_of(config, "cfl") == "0.3");
  CHECK(value_of(config, "flux") == "resistive");
  CHECK(value_of(config, "viscosity") == "first_order");

  CHECK_THROWS_AS(mhdcli::apply_assignment(values, "cells"), mhd::ConfigError);
  CHECK_THROWS_AS(mhdcli::resolve_config({{"colour", "red"}}), mhd::ConfigError);
  CHECK_THROWS_AS(mhdcli::resolve_config({{"problem", "nope"}}), mhd::ConfigError);
  CHECK_THROWS_AS(mhdcli::resolve_config({{"cells", "many"}}), mhd::ConfigError);
  CHECK_THROWS_AS(mhdcli::resolve_config({{"viscosity", "huge"}}), mhd::ConfigError);
  CHECK_THROWS_AS(mhdcli::resolve_config({{"problem", "brio_wu"}, {"cleaning", "per_stage"}}), mhd::ConfigError);
  CHECK_THROWS_AS(mhdcli::resolve_config({{"problem", "brio_wu"}, {"overrides.p0", "1"}}), mhd::ConfigError);

  const auto vortex = mhdcli::resolve_config({{"problem", "vortex"}, {"overrides.p0", "2"}});
  CHECK(vortex.settings.overrides.at("p0") == 2.0);
  CHECK(value_of(vortex, "overrides.p0") == "2");
}

TEST_CASE("shortest round-trip numbers") {
  CHECK(mhdcli::format_number(0.3) == "0.3");
  CHECK(mhdcli::format_number(2.0) == "2");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(mhdcli::format_number(third)) == third);
}

TEST_CASE("snapshot outputs") {
  auto s = mhd::default_settings("orszag_tang");
  s.cells = 2;
  s.degree = 3;
  s.mass = mhd::MassTreatment::Consistent;
  const mhd::Simulation sim(s);

  std::ostringstream csv;
  mhdcli::write_snapshot_csv(csv, sim);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x,y,rho,u_x,u_y,p,B_x,B_y,eps");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == sim.space().num_dofs());

  std::ostringstream vtk;
  mhdcli::write_snapshot_vtk(vtk, sim);
  const std::string text = vtk.str();
  // 8 cells of degree 3: 10 points and 9 sub-triangles each.
  CHECK(text.find("POINTS 80 double") != std::string::npos);
  CHECK(text.find("CELLS 72 288") != std::string::npos);
  CHECK(text.find("VECTORS B double") != std::string::npos);

  const auto bw = mhd::Simulation([] {
    auto b = mhd::default_settings("brio_wu");
    b.cells = 10;
    return b;
  }());
  std::ostringstream none;
  CHECK_THROWS_AS(mhdcli::write_snapshot_vtk(none, bw), mhd::Error);
}

TEST_CASE("snapshot indices") {
  CHECK(mhdcli::snapshot_indices(1000, 0) == std::vector<int>{0});
  CHECK(mhdcli::snapshot_indices(1000, 4) == std::vector<int>{0, 250, 500, 750, 1000});
  CHECK(mhdcli::snapshot_indices(3, 10) == std::vector<int>{0, 1, 2, 3});
}
