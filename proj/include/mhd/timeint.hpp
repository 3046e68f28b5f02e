#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mhd/fespace.hpp"
#include "mhd/thermo.hpp"

namespace mhd {

enum class SSPScheme { SSPRK33, SSPRK54 };

/// Shu-Osher form: u_i = sum_{j<i} alpha_ij u_j + beta_ij dt L(u_j), i = 1..stages.
struct ShuOsherTableau {
  int order = 0;
  std::vector<std::vector<double>> alpha;
  std::vector<std::vector<double>> beta;

  int stages() const { return static_cast<int>(alpha.size()); }
};

const ShuOsherTableau& tableau(SSPScheme scheme);

/// k <= 2 pairs with SSPRK33, k = 3 with SSPRK54.
SSPScheme scheme_for_degree(int degree);

std::string to_string(SSPScheme scheme);

/// One step of an SSP scheme. `rhs(u, out)` writes L(u); `after_stage(u, stage)`
/// runs on every freshly formed stage value (constraints, cleaning, checks).
template <typename State, typename Rhs, typename Hook>
void ssp_step(SSPScheme scheme, const Rhs& rhs, State& u, double dt, const Hook& after_stage) {
  const ShuOsherTableau& tab = tableau(scheme);
  const int s = tab.stages();
  std::vector<State> values(s + 1);
  std::vector<State> derivatives(s);
  std::vector<bool> evaluated(s, false);
  values[0] = u;
  for (int i = 1; i <= s; ++i) {
    const auto& a = tab.alpha[i - 1];
    const auto& b = tab.beta[i - 1];
    State next = values[0] * 0.0;
    for (int j = 0; j < i; ++j) {
      if (a[j] != 0.0) next += a[j] * values[j];
      if (b[j] != 0.0) {
        if (!evaluated[j]) {
          rhs(values[j], derivatives[j]);
          evaluated[j] = true;
        }
        next += (b[j] * dt) * derivatives[j];
      }
    }
    after_stage(next, i);
    values[i] = std::move(next);
  }
  u = std::move(values[s]);
}

template <typename State, typename Rhs>
void ssp_step(SSPScheme scheme, const Rhs& rhs, State& u, double dt) {
  ssp_step(scheme, rhs, u, dt, [](State&, int) {});
}

/// dt = cfl min(h) / max(maxspeed), clipped so that t + dt <= t_final.
double compute_dt(const FESpace& space, const SolutionField& U, const ScalarField& h, double cfl,
                  const GasModel<double>& gas, double t = 0.0,
                  double t_final = std::numeric_limits<double>::infinity());

}  // namespace mhd
