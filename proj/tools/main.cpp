#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhd/errors.hpp"
#include "run_config.hpp"
#include "runner.hpp"
#include "suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous finite element solver for the regularized ideal MHD equations"};
  std::string config_path;
  std::vector<std::string> assignments;
  std::string suite;
  std::string out_dir = "out";
  std::optional<double> vortex_p0;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", assignments, "override one setting, e.g. --set cells=320 (repeatable)");
  app.add_option("--suite", suite, "run a benchmark suite: paper_tables, entropy_principles, shocks_2d");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--vortex-p0", vortex_p0, "vortex base pressure (same as --set overrides.p0=...)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    mhdcli::KeyValues values;
    if (!config_path.empty()) values = mhdcli::read_config_file(config_path);
    for (const auto& a : assignments) mhdcli::apply_assignment(values, a);
    if (vortex_p0) values["overrides.p0"] = std::to_string(*vortex_p0);

    if (!suite.empty()) {
      const auto criteria = mhdcli::run_suite(suite, values, out_dir, std::cout);
      bool all = true;
      for (const auto& c : criteria) all = all && c.passed;
      return all ? kExitOk : kExitNumerical;
    }

    const mhdcli::RunConfig config = mhdcli::resolve_config(values);
    const auto& s = config.settings;
    if (s.flux.kind == mhd::ViscousFluxKind::Resistive) {
      const auto spec = mhd::make_problem(s.problem, s.overrides);
      if (spec.dim == 2 && !s.cleaning.value_or(spec.cleaning)) {
        std::cerr << "warning: resistive flux without divergence cleaning; div B is expected to grow\n";
      }
    }
    const auto outcome = mhdcli::run_case(config, out_dir, std::cout);
    return outcome.completed() ? kExitOk : kExitNumerical;
  } catch (const mhd::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mhd::InadmissibleIC& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mhd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
