#pragma once

#include <memory>

#include <Eigen/SparseCholesky>

#include "mhd/fespace.hpp"
#include "mhd/fluxes.hpp"

namespace mhd {

enum class MassTreatment { Lumped, Consistent };

/// Small fixed-capacity local matrices (at most 10 basis functions per cell).
using LocalGradients = Eigen::Matrix<double, Eigen::Dynamic, 2, 0, 10, 2>;
using LocalState = Eigen::Matrix<double, Eigen::Dynamic, kNumComponents, 0, 10, kNumComponents>;

/// Conserved state and its gradient interpolated at one quadrature point.
struct PointState {
  StateVector<double> U;
  FluxMatrix<double> grad;
};

/// Evaluates U_h and grad U_h at quadrature point q of `cell`.
PointState evaluate_at(const FESpace& space, const BasisTable& table, const SolutionField& U,
                       int cell, int q);

/// Semi-discrete operator dU/dt = M^{-1} [ (F(U_h) - F_V(U_h, grad U_h), grad phi_i) ].
///
/// The inviscid divergence is integrated by parts so that the scheme is exactly
/// conservative with quadrature-point flux evaluation. Boundary integrals only
/// touch Dirichlet rows, whose time derivative is zero.
class SemidiscreteOperator {
 public:
  SemidiscreteOperator(const FESpace& space, const MassOperators& mass, GasModel<double> gas,
                       ViscousFluxChoice flux, MassTreatment treatment,
                       const Constraints* constraints = nullptr);

  /// Assembled weak-form residual (before applying the inverse mass).
  void residual(const SolutionField& U, const ScalarField& eps, SolutionField& out) const;

  /// Time derivative; constrained rows are zero.
  void evaluate(const SolutionField& U, const ScalarField& eps, SolutionField& dUdt) const;

  const FESpace& space() const { return *space_; }
  const GasModel<double>& gas() const { return gas_; }
  const ViscousFluxChoice& flux() const { return flux_; }
  MassTreatment mass_treatment() const { return treatment_; }

 private:
  const FESpace* space_;
  const MassOperators* mass_;
  GasModel<double> gas_;
  ViscousFluxChoice flux_;
  MassTreatment treatment_;
  const Constraints* constraints_;
  std::vector<int> constrained_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> consistent_solver_;
};

}  // namespace mhd
