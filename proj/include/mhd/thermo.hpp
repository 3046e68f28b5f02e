#pragma once

// Ideal-gas thermodynamics for the MHD state vector U = (rho, m, E, B).
//
// Velocity and magnetic field always carry two components. One-dimensional
// runs (the "1.5D" setting of the Riemann problems) simply have no
// y-derivatives, so the same 6-component state serves both 1D and 2D meshes.

#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

#include "mhd/errors.hpp"

namespace mhd {

inline constexpr int kNumComponents = 6;

/// Column index of each conserved component in a nodal solution matrix.
enum Component : int { kRho = 0, kMx = 1, kMy = 2, kEnergy = 3, kBx = 4, kBy = 5 };

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using StateVector = Eigen::Matrix<Scalar, kNumComponents, 1>;

template <typename Scalar = double>
struct GasModel {
  Scalar gamma = Scalar(1.4);
  Scalar cv = Scalar(1);

  Scalar cp() const { return gamma * cv; }

  void validate() const {
    if (!(gamma > Scalar(1)) || !(cv > Scalar(0))) {
      throw Error("GasModel requires gamma > 1 and c_v > 0");
    }
  }
};

template <typename Scalar = double>
struct ConservedState {
  Scalar rho{0};
  Vector2<Scalar> m = Vector2<Scalar>::Zero();
  Scalar E{0};
  Vector2<Scalar> B = Vector2<Scalar>::Zero();

  static ConservedState from_vector(const StateVector<Scalar>& v) {
    ConservedState U;
    U.rho = v[kRho];
    U.m = v.template segment<2>(kMx);
    U.E = v[kEnergy];
    U.B = v.template segment<2>(kBx);
    return U;
  }

  StateVector<Scalar> to_vector() const {
    StateVector<Scalar> v;
    v << rho, m, E, B;
    return v;
  }
};

template <typename Scalar = double>
struct PrimitiveState {
  Scalar rho{0};
  Vector2<Scalar> u = Vector2<Scalar>::Zero();
  Scalar p{0};
  Scalar T{0};  ///< p / rho
  Scalar e{0};  ///< specific internal energy
  Scalar s{0};  ///< c_v ln(p / rho^gamma)
  Vector2<Scalar> B = Vector2<Scalar>::Zero();
};

template <typename Scalar = double>
struct EntropyPairValue {
  Scalar S{0};
  Vector2<Scalar> flux = Vector2<Scalar>::Zero();
};

namespace detail {

template <typename Scalar>
std::string describe(const char* what, Scalar value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (value " << static_cast<double>(value) << ")";
  return os.str();
}

}  // namespace detail

/// Internal energy density rho*e = E - |m|^2/(2 rho) - |B|^2/2.
template <typename Scalar>
Scalar internal_energy_density(const ConservedState<Scalar>& U) {
  return U.E - U.m.squaredNorm() / (Scalar(2) * U.rho) - U.B.squaredNorm() / Scalar(2);
}

template <typename Scalar>
Scalar specific_entropy(Scalar rho, Scalar p, const GasModel<Scalar>& gas) {
  using std::log;
  using std::pow;
  if (!(rho > Scalar(0))) {
    throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveDensity,
                             detail::describe("nonpositive density", rho));
  }
  if (!(p > Scalar(0))) {
    throw AdmissibilityError(AdmissibilityError::Kind::NonpositivePressure,
                             detail::describe("nonpositive pressure", p));
  }
  return gas.cv * (log(p) - gas.gamma * log(rho));
}

template <typename Scalar>
PrimitiveState<Scalar> primitive_from_conserved(const ConservedState<Scalar>& U,
                                                const GasModel<Scalar>& gas) {
  if (!(U.rho > Scalar(0))) {
    throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveDensity,
                             detail::describe("nonpositive density", U.rho));
  }
  const Scalar rho_e = internal_energy_density(U);
  if (!(rho_e > Scalar(0))) {
    throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveInternalEnergy,
                             detail::describe("nonpositive internal energy", rho_e));
  }
  PrimitiveState<Scalar> P;
  P.rho = U.rho;
  P.u = U.m / U.rho;
  P.p = (gas.gamma - Scalar(1)) * rho_e;
  P.T = P.p / U.rho;
  P.e = rho_e / U.rho;
  P.s = specific_entropy(U.rho, P.p, gas);
  P.B = U.B;
  return P;
}

template <typename Scalar>
ConservedState<Scalar> conserved_from_primitive(Scalar rho, const Vector2<Scalar>& u, Scalar p,
                                                const Vector2<Scalar>& B,
                                                const GasModel<Scalar>& gas) {
  if (!(rho > Scalar(0))) {
    throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveDensity,
                             detail::describe("nonpositive density", rho));
  }
  ConservedState<Scalar> U;
  U.rho = rho;
  U.m = rho * u;
  U.E = p / (gas.gamma - Scalar(1)) + Scalar(0.5) * rho * u.squaredNorm() +
        Scalar(0.5) * B.squaredNorm();
  U.B = B;
  return U;
}

/// Mathematical entropy S = rho s / (gamma - 1) and its flux u S, with c_v = 1.
template <typename Scalar>
EntropyPairValue<Scalar> entropy_pair(const ConservedState<Scalar>& U,
                                      const GasModel<Scalar>& gas) {
  GasModel<Scalar> unit_cv{gas.gamma, Scalar(1)};
  const auto P = primitive_from_conserved(U, unit_cv);
  EntropyPairValue<Scalar> out;
  out.S = P.rho * P.s / (gas.gamma - Scalar(1));
  out.flux = P.u * out.S;
  return out;
}

/// Fast magnetosonic speed c_f in direction n (|n| = 1).
template <typename Scalar>
Scalar fast_magnetosonic_speed(Scalar rho, Scalar p, const Vector2<Scalar>& B,
                               const Vector2<Scalar>& n, const GasModel<Scalar>& gas) {
  using std::sqrt;
  using std::max;
  const Scalar a2 = gas.gamma * p / rho;
  const Scalar b2 = B.squaredNorm() / rho;
  const Scalar bn = B.dot(n);
  const Scalar bn2 = bn * bn / rho;
  const Scalar sum = a2 + b2;
  const Scalar disc = max(Scalar(0), sum * sum - Scalar(4) * a2 * bn2);
  return sqrt(Scalar(0.5) * (sum + sqrt(disc)));
}

/// Largest eigenvalue magnitude of the flux Jacobian in direction n: |u.n| + c_f.
template <typename Scalar>
Scalar max_wave_speed(const ConservedState<Scalar>& U, const Vector2<Scalar>& n,
                      const GasModel<Scalar>& gas) {
  using std::abs;
  const auto P = primitive_from_conserved(U, gas);
  return abs(P.u.dot(n)) + fast_magnetosonic_speed(P.rho, P.p, P.B, n, gas);
}

/// Max of max_wave_speed over the first `dim` coordinate directions.
template <typename Scalar>
Scalar max_coordinate_wave_speed(const ConservedState<Scalar>& U, int dim,
                                 const GasModel<Scalar>& gas) {
  using std::abs;
  using std::max;
  const auto P = primitive_from_conserved(U, gas);
  Scalar best{0};
  for (int d = 0; d < dim; ++d) {
    const Vector2<Scalar> n = Vector2<Scalar>::Unit(d);
    best = max(best, abs(P.u[d]) + fast_magnetosonic_speed(P.rho, P.p, P.B, n, gas));
  }
  return best;
}

/// Partial derivatives of s(rho, e) = c_v ln((gamma - 1) e rho^(1 - gamma)).
template <typename Scalar>
struct EntropyPartials {
  Scalar s_rho, s_e, s_rhorho, s_ee, s_rhoe;

  static EntropyPartials at(Scalar rho, Scalar e, const GasModel<Scalar>& gas) {
    const Scalar one_minus_gamma = Scalar(1) - gas.gamma;
    EntropyPartials d;
    d.s_rho = gas.cv * one_minus_gamma / rho;
    d.s_e = gas.cv / e;
    d.s_rhorho = -gas.cv * one_minus_gamma / (rho * rho);
    d.s_ee = -gas.cv / (e * e);
    d.s_rhoe = Scalar(0);
    return d;
  }
};

/// Coefficient matrix of the quadratic form J1(grad rho, grad e); negative definite
/// whenever -s is strictly convex in (1/rho, e).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> j1_matrix(const ConservedState<Scalar>& U, const GasModel<Scalar>& gas,
                                      Scalar epsilon) {
  if (!(epsilon > Scalar(0))) throw Error("j1_matrix requires epsilon > 0");
  const auto P = primitive_from_conserved(U, gas);
  const auto d = EntropyPartials<Scalar>::at(P.rho, P.e, gas);
  // d/drho (rho^2 s_rho) = 2 rho s_rho + rho^2 s_rhorho
  const Scalar drho_rho2_srho = Scalar(2) * P.rho * d.s_rho + P.rho * P.rho * d.s_rhorho;
  Eigen::Matrix<Scalar, 2, 2> J;
  J(0, 0) = epsilon * drho_rho2_srho / P.rho;
  J(0, 1) = epsilon * P.rho * d.s_rhoe;
  J(1, 0) = J(0, 1);
  J(1, 1) = epsilon * P.rho * d.s_ee;
  return J;
}

/// A twice differentiable scalar function f(s) used to build the generalized entropy -rho f(s).
template <typename Scalar = double>
struct EntropyGenerator {
  std::function<Scalar(Scalar)> f;
  std::function<Scalar(Scalar)> df;
  std::function<Scalar(Scalar)> d2f;
};

template <typename Scalar = double>
struct ConvexityReport {
  bool cond1 = false;  ///< f'(s) > 0
  bool cond2 = false;  ///< f'(s)/c_p - f''(s) > 0
  bool hessian_pd = false;
  Scalar margin{0};          ///< f'(s)/c_p - f''(s)
  Scalar min_eigenvalue{0};  ///< of P S_UU P^T
  Eigen::Matrix<Scalar, kNumComponents, kNumComponents> transformed_hessian;
};

/// The invertible change of basis P that block-diagonalizes the entropy Hessian.
template <typename Scalar>
Eigen::Matrix<Scalar, kNumComponents, kNumComponents> entropy_transform_matrix(
    const ConservedState<Scalar>& U, const GasModel<Scalar>& gas) {
  const auto P = primitive_from_conserved(U, gas);
  Eigen::Matrix<Scalar, kNumComponents, kNumComponents> T =
      Eigen::Matrix<Scalar, kNumComponents, kNumComponents>::Zero();
  T(0, 0) = Scalar(1);
  T(0, kMx) = P.u[0];
  T(0, kMy) = P.u[1];
  T(0, kEnergy) = Scalar(0.5) * P.u.squaredNorm() + P.e;
  T(kMx, kMx) = P.rho;
  T(kMy, kMy) = P.rho;
  T(kMx, kEnergy) = P.rho * P.u[0];
  T(kMy, kEnergy) = P.rho * P.u[1];
  T(kEnergy, kEnergy) = P.rho;
  T(kBx, kEnergy) = P.B[0];
  T(kBy, kEnergy) = P.B[1];
  T(kBx, kBx) = Scalar(1);
  T(kBy, kBy) = Scalar(1);
  return T;
}

/// P S_UU P^T for S = -rho f(s), assembled from the partials of s.
template <typename Scalar>
Eigen::Matrix<Scalar, kNumComponents, kNumComponents> transformed_entropy_hessian(
    const ConservedState<Scalar>& U, const GasModel<Scalar>& gas,
    const EntropyGenerator<Scalar>& gen) {
  const auto P = primitive_from_conserved(U, gas);
  const auto d = EntropyPartials<Scalar>::at(P.rho, P.e, gas);
  const Scalar f1 = gen.df(P.s);
  const Scalar f2 = gen.d2f(P.s);

  Eigen::Matrix<Scalar, kNumComponents, kNumComponents> H =
      Eigen::Matrix<Scalar, kNumComponents, kNumComponents>::Zero();
  H(0, 0) = Scalar(2) * d.s_rho + P.rho * d.s_rhorho;
  H(0, kEnergy) = P.rho * d.s_rhoe;
  H(kEnergy, 0) = H(0, kEnergy);
  H(kMx, kMx) = -P.rho * d.s_e;
  H(kMy, kMy) = -P.rho * d.s_e;
  H(kEnergy, kEnergy) = P.rho * d.s_ee;
  H(kBx, kBx) = -d.s_e;
  H(kBy, kBy) = -d.s_e;

  StateVector<Scalar> w = StateVector<Scalar>::Zero();
  w[0] = d.s_rho;
  w[kEnergy] = d.s_e;
  return -f1 * H - f2 * P.rho * w * w.transpose();
}

/// Hessian of -rho f(s) with respect to the conserved variables.
template <typename Scalar>
Eigen::Matrix<Scalar, kNumComponents, kNumComponents> entropy_hessian(
    const ConservedState<Scalar>& U, const GasModel<Scalar>& gas,
    const EntropyGenerator<Scalar>& gen) {
  const auto T = entropy_transform_matrix(U, gas);
  const auto lu = T.partialPivLu();
  const Eigen::Matrix<Scalar, kNumComponents, kNumComponents> Tinv = lu.inverse();
  return Tinv * transformed_entropy_hessian(U, gas, gen) * Tinv.transpose();
}

template <typename Scalar>
ConvexityReport<Scalar> generalized_entropy_convexity_check(const ConservedState<Scalar>& U,
                                                            const GasModel<Scalar>& gas,
                                                            const EntropyGenerator<Scalar>& gen) {
  const auto P = primitive_from_conserved(U, gas);
  ConvexityReport<Scalar> r;
  const Scalar f1 = gen.df(P.s);
  const Scalar f2 = gen.d2f(P.s);
  r.margin = f1 / gas.cp() - f2;
  r.cond1 = f1 > Scalar(0);
  r.cond2 = r.margin > Scalar(0);
  r.transformed_hessian = transformed_entropy_hessian(U, gas, gen);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, kNumComponents, kNumComponents>> eig(
      r.transformed_hessian, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = eig.eigenvalues().minCoeff();
  r.hessian_pd = r.min_eigenvalue > Scalar(0);
  return r;
}

}  // namespace mhd
