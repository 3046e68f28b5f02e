#pragma once

#include <memory>

#include <Eigen/SparseCholesky>

#include "mhd/fespace.hpp"
#include "mhd/thermo.hpp"

namespace mhd {

/// Left-hand side of the Poisson problem for the cleaning potential Psi.
enum class PoissonOperator {
  /// D M_L^{-1} D^T: the Laplacian built from the same discrete gradient that
  /// updates B, so the cleaned field is exactly weakly divergence free.
  Compatible,
  /// The standard stiffness matrix (grad Psi, grad v).
  Stiffness,
};

enum class PoissonSolver { Factorized, ConjugateGradient };

/// Which energy variable a cleaning step preserves.
enum class CleaningEnergy {
  TotalEnergy,  ///< E fixed; the internal energy absorbs the magnetic energy change
  Pressure,     ///< rho e fixed; E absorbs the magnetic energy change
};

struct CleaningReport {
  double weak_divergence_before = 0.0;
  double weak_divergence_after = 0.0;
  int iterations = 0;
};

/// ||div B_h||_{L2} evaluated cellwise by quadrature.
double divergence_l2(const FESpace& space, const VectorField& B);

/// Projection cleaning B <- B - grad_h Psi with grad_h Psi = M_L^{-1} D^T Psi and
/// Psi solving the Poisson problem with right-hand side d_v = (B, grad v).
/// Psi has zero mean; on non-periodic sides the natural (Neumann) condition applies.
/// M_L is the row-sum lumped mass, replaced by the rescaled consistent diagonal
/// when a row sum is not positive (P2 triangles).
class DivergenceCleaner {
 public:
  DivergenceCleaner(const FESpace& space, const MassOperators& mass,
                    PoissonOperator op = PoissonOperator::Compatible,
                    PoissonSolver solver = PoissonSolver::Factorized);

  /// Weak divergence functional d_v = (B, grad v) = -(div B, v) + boundary terms.
  Eigen::VectorXd weak_divergence(const VectorField& B) const;
  /// sqrt(d^T M_L^{-1} d): a discrete L2 norm of the weak divergence.
  double weak_divergence_norm(const VectorField& B) const;

  VectorField clean(const VectorField& B, CleaningReport* report = nullptr) const;

  /// Cleans the magnetic columns of U in place, keeping rho, m and the chosen energy.
  void clean_state(SolutionField& U, CleaningReport* report = nullptr,
                   CleaningEnergy energy = CleaningEnergy::TotalEnergy) const;

  PoissonOperator poisson_operator() const { return op_; }

 private:
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double scale, int* iterations) const;

  const FESpace* space_;
  Eigen::VectorXd diagonal_mass_;
  PoissonOperator op_;
  PoissonSolver solver_kind_;
  SparseMatrix Dx_, Dy_, DxT_, DyT_, absDx_, absDy_;
  SparseMatrix A_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> factor_;
};

/// Replaces B in U. With TotalEnergy, E is unchanged and the new internal energy
/// must stay positive (AdmissibilityError otherwise); with Pressure, E is shifted
/// by the change of magnetic energy.
SolutionField postclean_consistency(const SolutionField& U, const VectorField& B,
                                    CleaningEnergy energy = CleaningEnergy::TotalEnergy);

}  // namespace mhd
