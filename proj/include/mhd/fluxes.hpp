#pragma once

// Pointwise inviscid and viscous MHD fluxes.
//
// A flux is a 6x2 matrix: row c is the flux vector of conserved component c,
// column j its x_j direction. Gradients use the same layout (row c = grad U_c).
// In one space dimension only column 0 is ever used.

#include <Eigen/Dense>

#include "mhd/thermo.hpp"

namespace mhd {

template <typename Scalar>
using FluxMatrix = Eigen::Matrix<Scalar, kNumComponents, 2>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar = double>
struct FluxTensors {
  FluxMatrix<Scalar> euler = FluxMatrix<Scalar>::Zero();
  FluxMatrix<Scalar> magnetic = FluxMatrix<Scalar>::Zero();

  FluxMatrix<Scalar> total() const { return euler + magnetic; }
};

/// -1/2 |B|^2 I + B (x) B
template <typename Scalar>
Matrix2<Scalar> maxwell_stress(const Vector2<Scalar>& B) {
  return B * B.transpose() - Scalar(0.5) * B.squaredNorm() * Matrix2<Scalar>::Identity();
}

template <typename Scalar>
FluxTensors<Scalar> inviscid_flux(const ConservedState<Scalar>& U, const GasModel<Scalar>& gas) {
  const auto P = primitive_from_conserved(U, gas);
  const Matrix2<Scalar> stress = maxwell_stress(U.B);
  FluxTensors<Scalar> F;

  F.euler.row(kRho) = U.m.transpose();
  F.euler.template block<2, 2>(kMx, 0) =
      U.m * P.u.transpose() + P.p * Matrix2<Scalar>::Identity();
  F.euler.row(kEnergy) = (U.E + P.p) * P.u.transpose();

  F.magnetic.template block<2, 2>(kMx, 0) = -stress;
  F.magnetic.row(kEnergy) = -(stress * P.u).transpose();
  // row i, column j: u_j B_i - B_j u_i
  F.magnetic.template block<2, 2>(kBx, 0) =
      U.B * P.u.transpose() - P.u * U.B.transpose();
  return F;
}

enum class ViscousFluxKind { Monolithic, MonolithicNoMass, Resistive };

/// Which viscous flux regularizes the system. For the resistive flux each
/// physical coefficient is a fixed multiple of the nodal viscosity field:
/// mu = mu_factor eps, lambda = lambda_factor eps, kappa = kappa_factor eps,
/// eta = eta_factor eps.
struct ViscousFluxChoice {
  ViscousFluxKind kind = ViscousFluxKind::Monolithic;
  double mu_factor = 1.0;
  double lambda_factor = 0.0;
  double kappa_factor = 1.0;
  double eta_factor = 1.0;

  static ViscousFluxChoice monolithic() { return {}; }
  static ViscousFluxChoice monolithic_no_mass() {
    ViscousFluxChoice c;
    c.kind = ViscousFluxKind::MonolithicNoMass;
    return c;
  }
  static ViscousFluxChoice resistive(double kappa_factor, double lambda_factor = 0.0,
                                     double eta_factor = 1.0, double mu_factor = 1.0) {
    ViscousFluxChoice c;
    c.kind = ViscousFluxKind::Resistive;
    c.kappa_factor = kappa_factor;
    c.lambda_factor = lambda_factor;
    c.eta_factor = eta_factor;
    c.mu_factor = mu_factor;
    return c;
  }
};

/// Gradients of the primitive quantities needed by the resistive flux,
/// recovered from conserved gradients by the chain rule.
template <typename Scalar>
struct PrimitiveGradients {
  Matrix2<Scalar> grad_u;  ///< row i = grad u_i
  Matrix2<Scalar> grad_B;  ///< row i = grad B_i
  Vector2<Scalar> grad_T;  ///< T = p / rho

  static PrimitiveGradients from(const ConservedState<Scalar>& U, const FluxMatrix<Scalar>& G,
                                 const GasModel<Scalar>& gas) {
    const auto P = primitive_from_conserved(U, gas);
    const Vector2<Scalar> grad_rho = G.row(kRho).transpose();
    const Matrix2<Scalar> grad_m = G.template block<2, 2>(kMx, 0);
    const Vector2<Scalar> grad_E = G.row(kEnergy).transpose();
    PrimitiveGradients out;
    out.grad_B = G.template block<2, 2>(kBx, 0);
    out.grad_u = (grad_m - P.u * grad_rho.transpose()) / U.rho;
    const Vector2<Scalar> grad_rho_e = grad_E - grad_m.transpose() * P.u +
                                       Scalar(0.5) * P.u.squaredNorm() * grad_rho -
                                       out.grad_B.transpose() * U.B;
    const Vector2<Scalar> grad_p = (gas.gamma - Scalar(1)) * grad_rho_e;
    out.grad_T = (grad_p - P.T * grad_rho) / U.rho;
    return out;
  }
};

/// Resistive MHD viscous flux (0, tau, u.tau + kappa grad T + eta B.(grad B - grad B^T),
/// eta (grad B - grad B^T)).
template <typename Scalar>
FluxMatrix<Scalar> resistive_flux(Scalar mu, Scalar lambda, Scalar kappa, Scalar eta,
                                  const ConservedState<Scalar>& U, const FluxMatrix<Scalar>& G,
                                  const GasModel<Scalar>& gas) {
  const auto pg = PrimitiveGradients<Scalar>::from(U, G, gas);
  const Vector2<Scalar> u = U.m / U.rho;
  const Matrix2<Scalar> tau = mu * (pg.grad_u + pg.grad_u.transpose()) -
                              lambda * pg.grad_u.trace() * Matrix2<Scalar>::Identity();
  const Matrix2<Scalar> curl_part = pg.grad_B - pg.grad_B.transpose();
  FluxMatrix<Scalar> F = FluxMatrix<Scalar>::Zero();
  F.template block<2, 2>(kMx, 0) = tau;
  F.row(kEnergy) = (tau.transpose() * u + kappa * pg.grad_T +
                    eta * curl_part.transpose() * U.B)
                       .transpose();
  F.template block<2, 2>(kBx, 0) = eta * curl_part;
  return F;
}

/// Viscous flux for a nodal viscosity value `eps` interpolated to the evaluation point.
template <typename Scalar>
FluxMatrix<Scalar> viscous_flux(const ViscousFluxChoice& choice, Scalar eps,
                                const ConservedState<Scalar>& U, const FluxMatrix<Scalar>& G,
                                const GasModel<Scalar>& gas) {
  switch (choice.kind) {
    case ViscousFluxKind::Monolithic:
      return eps * G;
    case ViscousFluxKind::MonolithicNoMass: {
      FluxMatrix<Scalar> F = eps * G;
      F.row(kRho).setZero();
      return F;
    }
    case ViscousFluxKind::Resistive:
      return resistive_flux<Scalar>(Scalar(choice.mu_factor) * eps,
                                    Scalar(choice.lambda_factor) * eps,
                                    Scalar(choice.kappa_factor) * eps,
                                    Scalar(choice.eta_factor) * eps, U, G, gas);
  }
  return FluxMatrix<Scalar>::Zero();
}

}  // namespace mhd
