#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "mhd/errors.hpp"

namespace mhdcli {

using mhd::ConfigError;

std::string format_number(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  const auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); });
  if (begin >= end.base()) return {};
  return std::string(begin, end.base());
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "off" || text == "no" || text == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

template <typename Enum>
Enum parse_choice(const std::string& key, const std::string& text,
                  const std::vector<std::pair<std::string, Enum>>& choices) {
  for (const auto& [name, value] : choices) {
    if (name == text) return value;
  }
  std::string names;
  for (const auto& c : choices) names += (names.empty() ? "" : ", ") + c.first;
  throw ConfigError(key + ": unknown value '" + text + "' (expected one of " + names + ")");
}

const std::vector<std::pair<std::string, mhd::TrianglePattern>> kPatterns = {
    {"right", mhd::TrianglePattern::Right}, {"crossed", mhd::TrianglePattern::Crossed}};
const std::vector<std::pair<std::string, mhd::ViscosityModel::Kind>> kViscosities = {
    {"none", mhd::ViscosityModel::Kind::None},
    {"first_order", mhd::ViscosityModel::Kind::FirstOrder},
    {"entropy", mhd::ViscosityModel::Kind::EntropyViscosity}};
const std::vector<std::pair<std::string, mhd::ViscousFluxKind>> kFluxes = {
    {"monolithic", mhd::ViscousFluxKind::Monolithic},
    {"monolithic_no_mass", mhd::ViscousFluxKind::MonolithicNoMass},
    {"resistive", mhd::ViscousFluxKind::Resistive}};
const std::vector<std::pair<std::string, mhd::MassTreatment>> kMasses = {
    {"lumped", mhd::MassTreatment::Lumped}, {"consistent", mhd::MassTreatment::Consistent}};
const std::vector<std::pair<std::string, mhd::CleaningEnergy>> kEnergies = {
    {"total_energy", mhd::CleaningEnergy::TotalEnergy}, {"pressure", mhd::CleaningEnergy::Pressure}};
const std::vector<std::pair<std::string, mhd::PoissonOperator>> kPoisson = {
    {"compatible", mhd::PoissonOperator::Compatible}, {"stiffness", mhd::PoissonOperator::Stiffness}};
const std::vector<std::pair<std::string, mhd::ResidualNormalization>> kNormalizations = {
    {"entropy", mhd::ResidualNormalization::EntropyDeviation},
    {"residual", mhd::ResidualNormalization::ResidualDeviation}};
const std::vector<std::pair<std::string, mhd::SSPScheme>> kSchemes = {
    {"ssprk33", mhd::SSPScheme::SSPRK33}, {"ssprk54", mhd::SSPScheme::SSPRK54}};

template <typename Enum>
std::string choice_name(Enum value, const std::vector<std::pair<std::string, Enum>>& choices) {
  for (const auto& [name, v] : choices) {
    if (v == value) return name;
  }
  return "?";
}

const std::set<std::string> kKeys = {
    "problem",         "cells",          "pattern",          "degree",
    "cfl",             "mass",           "t_final",          "scheme",
    "snapshots",       "sweep",          "flux",             "flux.kappa",
    "flux.lambda",     "flux.eta",       "flux.mu",          "viscosity",
    "viscosity.c_max", "viscosity.c_E",  "viscosity.normalization",
    "cleaning",        "cleaning.energy", "cleaning.poisson", "output.snapshots",
    "output.vtk"};

}  // namespace

std::string to_string(mhd::TrianglePattern pattern) { return choice_name(pattern, kPatterns); }
std::string to_string(mhd::ViscosityModel::Kind kind) { return choice_name(kind, kViscosities); }
std::string to_string(mhd::ViscousFluxKind kind) { return choice_name(kind, kFluxes); }
std::string to_string(mhd::MassTreatment mass) { return choice_name(mass, kMasses); }
std::string to_string(mhd::CleaningEnergy energy) { return choice_name(energy, kEnergies); }
std::string to_string(mhd::PoissonOperator op) { return choice_name(op, kPoisson); }
std::string to_string(mhd::ResidualNormalization normalization) {
  return choice_name(normalization, kNormalizations);
}

KeyValues parse_config(std::istream& in, const std::string& source) {
  KeyValues values;
  std::string section;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(source + ":" + std::to_string(number) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(number) + ": empty key");
    values[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return values;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, path);
}

void apply_assignment(KeyValues& values, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("--set with an empty key");
  values[key] = trim(assignment.substr(eq + 1));
}

RunConfig resolve_config(const KeyValues& values) {
  for (const auto& [key, value] : values) {
    if (!kKeys.count(key) && key.rfind("overrides.", 0) != 0) throw ConfigError("unknown key '" + key + "'");
  }
  const auto find = [&values](const std::string& key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  RunConfig config;
  const std::string problem = find("problem") ? *find("problem") : "brio_wu";
  try {
    config.settings = mhd::default_settings(problem);
  } catch (const mhd::UnknownProblem& e) {
    throw ConfigError(e.what());
  }
  mhd::SimulationSettings& s = config.settings;

  for (const auto& [key, value] : values) {
    if (key.rfind("overrides.", 0) == 0) s.overrides[key.substr(10)] = parse_double(key, value);
  }
  if (auto v = find("cells")) s.cells = parse_int("cells", *v);
  if (auto v = find("pattern")) s.pattern = parse_choice("pattern", *v, kPatterns);
  if (auto v = find("degree")) s.degree = parse_int("degree", *v);
  if (auto v = find("cfl")) s.cfl = parse_double("cfl", *v);
  if (auto v = find("mass")) s.mass = parse_choice("mass", *v, kMasses);
  if (auto v = find("t_final")) s.t_final = parse_double("t_final", *v);
  if (auto v = find("scheme")) s.scheme = parse_choice("scheme", *v, kSchemes);
  if (auto v = find("snapshots")) s.monitor_snapshots = parse_int("snapshots", *v);

  if (auto v = find("flux")) s.flux.kind = parse_choice("flux", *v, kFluxes);
  if (auto v = find("flux.kappa")) s.flux.kappa_factor = parse_double("flux.kappa", *v);
  if (auto v = find("flux.lambda")) s.flux.lambda_factor = parse_double("flux.lambda", *v);
  if (auto v = find("flux.eta")) s.flux.eta_factor = parse_double("flux.eta", *v);
  if (auto v = find("flux.mu")) s.flux.mu_factor = parse_double("flux.mu", *v);

  if (auto v = find("viscosity")) s.viscosity.kind = parse_choice("viscosity", *v, kViscosities);
  if (auto v = find("viscosity.c_max")) s.viscosity.c_max = parse_double("viscosity.c_max", *v);
  if (auto v = find("viscosity.c_E")) s.viscosity.c_E = parse_double("viscosity.c_E", *v);
  if (auto v = find("viscosity.normalization")) {
    s.viscosity.normalization = parse_choice("viscosity.normalization", *v, kNormalizations);
  }

  if (auto v = find("cleaning")) {
    s.cleaning = parse_choice<bool>("cleaning", *v, {{"off", false}, {"per_stage", true}});
  }
  if (auto v = find("cleaning.energy")) s.cleaning_energy = parse_choice("cleaning.energy", *v, kEnergies);
  if (auto v = find("cleaning.poisson")) s.poisson = parse_choice("cleaning.poisson", *v, kPoisson);

  if (auto v = find("output.snapshots")) config.output_snapshots = parse_int("output.snapshots", *v);
  if (auto v = find("output.vtk")) config.write_vtk = parse_bool("output.vtk", *v);
  if (auto v = find("sweep")) {
    std::stringstream list(*v);
    std::string item;
    while (std::getline(list, item, ',')) config.sweep.push_back(parse_int("sweep", trim(item)));
    if (config.sweep.empty()) throw ConfigError("sweep: expected a comma separated list of cell counts");
  }

  if (config.output_snapshots < 0) throw ConfigError("output.snapshots must be non-negative");
  for (int n : config.sweep) {
    if (n < 1) throw ConfigError("sweep: cell counts must be positive");
  }
  const mhd::ProblemSpec spec = mhd::make_problem(s.problem, s.overrides);
  s.validate(spec);
  return config;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config) {
  const mhd::SimulationSettings& s = config.settings;
  const mhd::ProblemSpec spec = mhd::make_problem(s.problem, s.overrides);
  std::vector<std::pair<std::string, std::string>> out;
  const auto add = [&out](const std::string& k, const std::string& v) { out.emplace_back(k, v); };
  add("problem", s.problem);
  add("dimension", std::to_string(spec.dim));
  add("gamma", format_number(spec.gas.gamma));
  for (const auto& [k, v] : s.overrides) add("overrides." + k, format_number(v));
  add("cells", std::to_string(s.cells > 0 ? s.cells : spec.default_cells));
  if (spec.dim == 2) {
    add("pattern", to_string(s.pattern.value_or(s.problem == "vortex" ? mhd::TrianglePattern::Crossed
                                                                       : mhd::TrianglePattern::Right)));
  }
  add("degree", std::to_string(s.degree));
  add("cfl", format_number(s.cfl));
  add("mass", to_string(s.mass));
  add("t_final", format_number(s.t_final.value_or(spec.t_final)));
  add("scheme", mhd::to_string(s.scheme.value_or(mhd::scheme_for_degree(s.degree))));
  add("snapshots", std::to_string(s.monitor_snapshots));
  add("flux", to_string(s.flux.kind));
  if (s.flux.kind == mhd::ViscousFluxKind::Resistive) {
    add("flux.kappa", format_number(s.flux.kappa_factor));
    add("flux.lambda", format_number(s.flux.lambda_factor));
    add("flux.eta", format_number(s.flux.eta_factor));
    add("flux.mu", format_number(s.flux.mu_factor));
  }
  add("viscosity", to_string(s.viscosity.kind));
  add("viscosity.c_max", format_number(s.viscosity.c_max));
  if (s.viscosity.kind == mhd::ViscosityModel::Kind::EntropyViscosity) {
    add("viscosity.c_E", format_number(s.viscosity.c_E));
    add("viscosity.normalization", to_string(s.viscosity.normalization));
  }
  const bool cleaning = spec.dim == 2 && s.cleaning.value_or(spec.cleaning);
  add("cleaning", cleaning ? "per_stage" : "off");
  if (cleaning) {
    add("cleaning.energy", to_string(s.cleaning_energy.value_or(spec.cleaning_energy)));
    add("cleaning.poisson", to_string(s.poisson));
  }
  add("output.snapshots", std::to_string(config.output_snapshots));
  add("output.vtk", config.write_vtk ? "true" : "false");
  if (!config.sweep.empty()) {
    std::string list;
    for (int n : config.sweep) list += (list.empty() ? "" : ",") + std::to_string(n);
    add("sweep", list);
  }
  return out;
}

}  // namespace mhdcli
