#include "mhd/timeint.hpp"

#include "mhd/errors.hpp"
#include "mhd/viscosity.hpp"

namespace mhd {

namespace {

ShuOsherTableau make_rk33() {
  ShuOsherTableau t;
  t.order = 3;
  t.alpha = {{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}};
  t.beta = {{1.0}, {0.0, 0.25}, {0.0, 0.0, 2.0 / 3.0}};
  return t;
}

// Five-stage fourth-order SSP scheme of Spiteri and Ruuth.
ShuOsherTableau make_rk54() {
  ShuOsherTableau t;
  t.order = 4;
  t.alpha = {{1.0},
             {0.444370493651235, 0.555629506348765},
             {0.620101851488403, 0.0, 0.379898148511597},
             {0.178079954393132, 0.0, 0.0, 0.821920045606868},
             {0.0, 0.0, 0.517231671970585, 0.096059710526147, 0.386708617503269}};
  t.beta = {{0.391752226571890},
            {0.0, 0.368410593050371},
            {0.0, 0.0, 0.251891774271694},
            {0.0, 0.0, 0.0, 0.544974750228521},
            {0.0, 0.0, 0.0, 0.063692468666290, 0.226007483236906}};
  return t;
}

}  // namespace

const ShuOsherTableau& tableau(SSPScheme scheme) {
  static const ShuOsherTableau rk33 = make_rk33();
  static const ShuOsherTableau rk54 = make_rk54();
  return scheme == SSPScheme::SSPRK33 ? rk33 : rk54;
}

SSPScheme scheme_for_degree(int degree) {
  return degree <= 2 ? SSPScheme::SSPRK33 : SSPScheme::SSPRK54;
}

std::string to_string(SSPScheme scheme) {
  return scheme == SSPScheme::SSPRK33 ? "ssprk33" : "ssprk54";
}

double compute_dt(const FESpace& space, const SolutionField& U, const ScalarField& h, double cfl,
                  const GasModel<double>& gas, double t, double t_final) {
  const double speed = nodal_max_speed(space, U, gas).maxCoeff();
  if (!(speed > 0.0)) throw Error("maximum wave speed is not positive");
  double dt = cfl * h.minCoeff() / speed;
  if (t + dt > t_final) dt = t_final - t;
  return dt;
}

}  // namespace mhd
