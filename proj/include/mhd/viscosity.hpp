#pragma once

#include <deque>

#include "mhd/fespace.hpp"
#include "mhd/thermo.hpp"

namespace mhd {

/// Denominator used to normalize the entropy residual.
enum class ResidualNormalization {
  EntropyDeviation,   ///< ||S - mean(S)||_inf: coefficient has units of length^2 / time
  ResidualDeviation,  ///< ||Rbar - R||_inf with Rbar = ||R - mean(R)||_inf: coefficient scales as h^2
};

struct ViscosityModel {
  enum class Kind { None, FirstOrder, EntropyViscosity };
  Kind kind = Kind::FirstOrder;
  double c_max = 0.5;
  double c_E = 1.0;
  ResidualNormalization normalization = ResidualNormalization::EntropyDeviation;

  void validate() const;
};

/// Largest coordinate-direction wave speed at every node.
ScalarField nodal_max_speed(const FESpace& space, const SolutionField& U, const GasModel<double>& gas);

/// eps_L,i = c_max h_i maxspeed_i.
ScalarField first_order_viscosity(const FESpace& space, const SolutionField& U, const ScalarField& h,
                                  const GasModel<double>& gas, double c_max = 0.5);

/// Nodal entropy S = rho s / (gamma - 1) (c_v = 1).
ScalarField entropy_field(const SolutionField& U, const GasModel<double>& gas);
/// Nodal entropy flux u S, one column per direction.
VectorField entropy_flux_field(const SolutionField& U, const ScalarField& S);

/// Time levels of the nodal entropy, newest first, used to approximate dS/dt
/// by variable-step BDF2 (BDF1 when only two levels exist).
class EntropyHistory {
 public:
  void push(double t, const ScalarField& S);
  void clear() { levels_.clear(); }
  int size() const { return static_cast<int>(levels_.size()); }
  bool ready() const { return size() >= 2; }
  const ScalarField& latest() const { return levels_.front().S; }
  /// Nodal dS/dt at the newest level. Requires ready().
  ScalarField time_derivative() const;

 private:
  struct Level {
    double t;
    ScalarField S;
  };
  std::deque<Level> levels_;
};

/// R_i = sum_K (1/|K|) int_K |dS/dt + div(u S)| phi_i, with dS/dt and u S
/// represented by their nodal interpolants.
ScalarField entropy_residual(const FESpace& space, const ScalarField& dSdt, const VectorField& flux);

/// eps_i = min(eps_L,i, c_E h_i^2 |R_i| / D) where D is the chosen deviation
/// (mean values weighted by the lumped mass). eps_H = 0 when D < 1e-14.
ScalarField entropy_viscosity(const ScalarField& R, const ScalarField& h, const ScalarField& eps_L,
                              const ScalarField& lumped, const ScalarField& S, double c_E,
                              ResidualNormalization normalization,
                              ScalarField* eps_H = nullptr);

}  // namespace mhd
