#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mhd/simulation.hpp"

namespace mhdcli {

/// Flat key/value configuration. Section headers `[name]` prefix the keys that
/// follow with `name.`; `#` starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config(std::istream& in, const std::string& source = "<config>");
KeyValues read_config_file(const std::string& path);

/// Applies one `key=value` assignment (as given to --set).
void apply_assignment(KeyValues& values, const std::string& assignment);

/// Fully resolved run configuration.
struct RunConfig {
  mhd::SimulationSettings settings;
  std::vector<int> sweep;    ///< cell counts of a convergence sweep (empty: single run)
  int output_snapshots = 1;  ///< solution files written after the initial one
  bool write_vtk = true;     ///< legacy VTK files for 2D runs
};

/// Builds a run configuration; every key must be known (ConfigError otherwise).
RunConfig resolve_config(const KeyValues& values);

/// Every setting with its resolved value, in a stable order, as key = value lines.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

/// Shortest text that reads back to exactly `value`.
std::string format_number(double value);

std::string to_string(mhd::TrianglePattern pattern);
std::string to_string(mhd::ViscosityModel::Kind kind);
std::string to_string(mhd::ViscousFluxKind kind);
std::string to_string(mhd::MassTreatment mass);
std::string to_string(mhd::CleaningEnergy energy);
std::string to_string(mhd::PoissonOperator op);
std::string to_string(mhd::ResidualNormalization normalization);

}  // namespace mhdcli
