#include "suites.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "mhd/errors.hpp"
#include "runner.hpp"

namespace mhdcli {

namespace fs = std::filesystem;

namespace {

struct Member {
  std::string name;
  KeyValues values;
};

using Evaluator = std::function<std::vector<CriterionResult>(const std::map<std::string, CaseOutcome>&)>;

struct Suite {
  std::vector<Member> members;
  Evaluator evaluate;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

const CaseOutcome* find(const std::map<std::string, CaseOutcome>& results, const std::string& name) {
  const auto it = results.find(name);
  return it == results.end() ? nullptr : &it->second;
}

CriterionResult missing(const std::string& criterion, const std::string& member) {
  return {criterion, false, "run '" + member + "' did not complete"};
}

/// Most negative min_s(t) - min_s(0) over the monitor history.
double worst_entropy_drop(const RunOutcome& run) {
  double worst = 0.0;
  if (run.history.empty()) return worst;
  const double s0 = run.history.front().min_s;
  for (const auto& row : run.history) worst = std::min(worst, row.min_s - s0);
  return worst;
}

bool positive_history(const RunOutcome& run, double* min_rho, double* min_rhoe) {
  *min_rho = std::numeric_limits<double>::infinity();
  *min_rhoe = std::numeric_limits<double>::infinity();
  for (const auto& row : run.history) {
    *min_rho = std::min(*min_rho, row.min_rho);
    *min_rhoe = std::min(*min_rhoe, row.min_rhoe);
  }
  return run.status.completed && *min_rho > 0.0 && *min_rhoe > 0.0;
}

CriterionResult positivity(const std::map<std::string, CaseOutcome>& results, const std::string& member) {
  const std::string name = "positivity: " + member;
  const CaseOutcome* c = find(results, member);
  if (!c || c->runs.empty()) return missing(name, member);
  double min_rho = 0.0, min_rhoe = 0.0;
  bool ok = true;
  std::string detail;
  for (const auto& run : c->runs) {
    ok = positive_history(run, &min_rho, &min_rhoe) && ok;
    detail += (detail.empty() ? "" : "; ") + std::to_string(run.dofs) + " DOFs: min rho " + fmt(min_rho) +
              ", min rho e " + fmt(min_rhoe) + (run.status.completed ? "" : " (" + run.status.failure + ")");
  }
  return {name, ok, detail};
}

CriterionResult rates_in_band(const std::map<std::string, CaseOutcome>& results, const std::string& member,
                              double lo, double hi) {
  const std::string name = "vortex rates in [" + fmt(lo) + ", " + fmt(hi) + "]: " + member;
  const CaseOutcome* c = find(results, member);
  if (!c || !c->completed()) return missing(name, member);
  std::vector<mhd::ErrorReport> reports;
  for (const auto& run : c->runs) {
    if (run.errors) reports.push_back(*run.errors);
  }
  if (reports.size() < 2) return {name, false, "needs at least two meshes"};
  bool ok = true;
  std::string detail;
  for (const auto& row : mhd::convergence_table(reports)) {
    if (std::isnan(row.rate_L1)) continue;
    const bool in = row.rate_L1 >= lo && row.rate_L1 <= hi && row.rate_L2 >= lo && row.rate_L2 <= hi;
    ok = ok && in;
    detail += (detail.empty() ? "" : "; ") + mhd::to_string(row.quantity) + "@" + std::to_string(row.dofs) +
              " L1 " + fmt(row.rate_L1) + " L2 " + fmt(row.rate_L2);
  }
  return {name, ok, detail};
}

CriterionResult table_written(const std::map<std::string, CaseOutcome>& results, const std::string& member) {
  const std::string name = "convergence table with rates: " + member;
  const CaseOutcome* c = find(results, member);
  if (!c || !c->completed()) return missing(name, member);
  std::vector<mhd::ErrorReport> reports;
  for (const auto& run : c->runs) {
    if (run.errors) reports.push_back(*run.errors);
  }
  bool ok = reports.size() >= 2;
  std::string detail;
  if (ok) {
    for (const auto& row : mhd::convergence_table(reports)) {
      if (std::isnan(row.rate_L2)) continue;
      ok = ok && std::isfinite(row.rate_L1) && std::isfinite(row.rate_L2);
      detail += (detail.empty() ? "" : "; ") + mhd::to_string(row.quantity) + " L2 rate " + fmt(row.rate_L2);
    }
  }
  return {name, ok, detail};
}

Suite paper_tables() {
  Suite suite;
  const KeyValues vortex = {{"problem", "vortex"}, {"snapshots", "100"}, {"output.snapshots", "1"}};
  auto p1_ev = vortex;
  p1_ev.insert({{"degree", "1"}, {"viscosity", "entropy"}, {"sweep", "61,121"}});
  auto p1_g = vortex;
  p1_g.insert({{"degree", "1"}, {"viscosity", "none"}, {"sweep", "61,121"}});
  auto p2 = vortex;
  p2.insert({{"degree", "2"}, {"mass", "consistent"}, {"viscosity", "entropy"}, {"sweep", "15,30"}});
  auto p3 = vortex;
  p3.insert({{"degree", "3"}, {"mass", "consistent"}, {"viscosity", "entropy"}, {"sweep", "10,20"}});
  suite.members = {{"vortex_p1_ev", p1_ev}, {"vortex_p1_galerkin", p1_g}, {"vortex_p2_ev", p2},
                   {"vortex_p3_ev", p3}};
  suite.evaluate = [](const std::map<std::string, CaseOutcome>& r) {
    return std::vector<CriterionResult>{rates_in_band(r, "vortex_p1_ev", 1.85, 2.15),
                                        rates_in_band(r, "vortex_p1_galerkin", 1.85, 2.15),
                                        table_written(r, "vortex_p2_ev"), table_written(r, "vortex_p3_ev"),
                                        positivity(r, "vortex_p1_ev")};
  };
  return suite;
}

Suite entropy_principles() {
  Suite suite;
  const KeyValues base = {{"cells", "640"},       {"degree", "1"},         {"viscosity", "first_order"},
                          {"mass", "lumped"},     {"snapshots", "1000"},   {"output.snapshots", "1"}};
  const auto with = [&base](std::initializer_list<std::pair<const std::string, std::string>> extra) {
    KeyValues v = base;
    for (const auto& kv : extra) v[kv.first] = kv.second;
    return v;
  };
  suite.members = {
      {"brio_wu_monolithic", with({{"problem", "brio_wu"}, {"flux", "monolithic"}})},
      {"brio_wu_resistive_k0", with({{"problem", "brio_wu"}, {"flux", "resistive"}, {"flux.kappa", "0"}})},
      {"brio_wu_resistive_k1", with({{"problem", "brio_wu"}, {"flux", "resistive"}, {"flux.kappa", "1"}})},
      {"contact_monolithic", with({{"problem", "contact"}, {"flux", "monolithic"}})},
      {"contact_resistive_k1", with({{"problem", "contact"}, {"flux", "resistive"}, {"flux.kappa", "1"}})},
      {"fast_rarefaction", with({{"problem", "fast_rarefaction"}})},
      {"intermediate_shock", with({{"problem", "intermediate_shock"}})},
      {"slow_shock", with({{"problem", "slow_shock"}})},
  };
  suite.evaluate = [](const std::map<std::string, CaseOutcome>& r) {
    std::vector<CriterionResult> out;
    {
      const std::string name = "minimum entropy principle, monolithic (drop >= -1e-12)";
      const CaseOutcome* c = find(r, "brio_wu_monolithic");
      if (!c || !c->completed()) {
        out.push_back(missing(name, "brio_wu_monolithic"));
      } else {
        const double drop = worst_entropy_drop(c->runs.front());
        out.push_back({name, drop >= -1e-12, "worst drop " + fmt(drop)});
      }
    }
    for (const std::string member : {"brio_wu_resistive_k0", "brio_wu_resistive_k1"}) {
      const std::string name = "minimum entropy violation, " + member + " (drop < -1e-6)";
      const CaseOutcome* c = find(r, member);
      if (!c || c->runs.empty()) {
        out.push_back(missing(name, member));
        continue;
      }
      const double drop = worst_entropy_drop(c->runs.front());
      out.push_back({name, drop < -1e-6, "worst drop " + fmt(drop)});
    }
    const mhd::RiemannStates contact = mhd::single_wave_ic("contact");
    const double rho_lo = std::min(contact.left.rho, contact.right.rho);
    const double rho_hi = std::max(contact.left.rho, contact.right.rho);
    {
      const std::string name = "contact compatibility, monolithic";
      const CaseOutcome* c = find(r, "contact_monolithic");
      if (!c || !c->completed()) {
        out.push_back(missing(name, "contact_monolithic"));
      } else {
        const auto& P = c->runs.front().final_primitives;
        const double over = std::max({0.0, P.col(0).maxCoeff() - rho_hi, rho_lo - P.col(0).minCoeff()});
        double dev = 0.0;
        const double ref[6] = {0.0, contact.left.u[0], contact.left.u[1], contact.left.p, contact.left.B[0],
                               contact.left.B[1]};
        for (int f = 1; f < 6; ++f) dev = std::max(dev, (P.col(f).array() - ref[f]).abs().maxCoeff());
        out.push_back({name, over <= 1e-6 && dev <= 1e-8,
                       "density excursion " + fmt(over) + ", max |u,p,B deviation| " + fmt(dev)});
      }
    }
    {
      const std::string name = "contact overshoot, resistive kappa=1 (> 1e-3)";
      const CaseOutcome* c = find(r, "contact_resistive_k1");
      if (!c || c->runs.empty()) {
        out.push_back(missing(name, "contact_resistive_k1"));
      } else {
        const auto& P = c->runs.front().final_primitives;
        const double over = std::max({0.0, P.col(0).maxCoeff() - rho_hi, rho_lo - P.col(0).minCoeff()});
        out.push_back({name, over > 1e-3, "density excursion " + fmt(over)});
      }
    }
    for (const std::string member : {"brio_wu_monolithic", "contact_monolithic", "fast_rarefaction",
                                     "intermediate_shock", "slow_shock"}) {
      out.push_back(positivity(r, member));
    }
    return out;
  };
  return suite;
}

Suite shocks_2d() {
  Suite suite;
  const KeyValues common = {{"snapshots", "100"}, {"output.snapshots", "2"}};
  auto ot = common;
  ot.insert({{"problem", "orszag_tang"}, {"cells", "48"}, {"t_final", "0.5"}});
  auto rotor = common;
  rotor.insert({{"problem", "rotor"}, {"cells", "64"}});
  auto blast = common;
  blast.insert({{"problem", "blast"}, {"cells", "64"}});
  suite.members = {{"orszag_tang", ot}, {"rotor", rotor}, {"blast", blast}};
  suite.evaluate = [](const std::map<std::string, CaseOutcome>& r) {
    return std::vector<CriterionResult>{positivity(r, "orszag_tang"), positivity(r, "rotor"),
                                        positivity(r, "blast")};
  };
  return suite;
}

Suite make_suite(const std::string& name) {
  if (name == "paper_tables") return paper_tables();
  if (name == "entropy_principles") return entropy_principles();
  if (name == "shocks_2d") return shocks_2d();
  std::string names;
  for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
  throw mhd::ConfigError("unknown suite '" + name + "' (expected one of " + names + ")");
}

}  // namespace

std::vector<std::string> suite_names() { return {"paper_tables", "entropy_principles", "shocks_2d"}; }

std::vector<CriterionResult> run_suite(const std::string& name, const KeyValues& extra,
                                       const fs::path& out_dir, std::ostream& log) {
  const Suite suite = make_suite(name);
  // Resolve every member first so configuration errors surface before any run.
  std::vector<RunConfig> configs;
  for (const auto& member : suite.members) {
    KeyValues values = member.values;
    for (const auto& [k, v] : extra) values[k] = v;
    configs.push_back(resolve_config(values));
  }

  std::map<std::string, CaseOutcome> results;
  for (std::size_t i = 0; i < suite.members.size(); ++i) {
    const std::string& member = suite.members[i].name;
    log << "[" << name << "] " << member << '\n';
    try {
      results[member] = run_case(configs[i], out_dir / member, log);
    } catch (const mhd::ConfigError&) {
      throw;
    } catch (const mhd::Error& e) {
      log << "  failed before the run started: " << e.what() << '\n';
    }
  }

  const std::vector<CriterionResult> criteria = suite.evaluate(results);
  fs::create_directories(out_dir);
  std::ofstream summary(out_dir / "suite_summary.txt");
  if (!summary) throw mhd::Error("cannot write " + (out_dir / "suite_summary.txt").string());
  summary << "# suite " << name << '\n';
  for (const auto& c : criteria) {
    const std::string line = std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  | " + c.detail;
    summary << line << '\n';
    log << line << '\n';
  }
  return criteria;
}

}  // namespace mhdcli
