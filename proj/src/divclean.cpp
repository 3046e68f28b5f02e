#include "mhd/divclean.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

constexpr double kShift = 1e-8;
constexpr int kMaxRefinements = 20;

/// Row-sum lumping, or diagonal scaling (consistent diagonal rescaled to the
/// total mass) when some row sum is not positive, as for P2 triangles.
Eigen::VectorXd positive_diagonal_mass(const MassOperators& mass) {
  if (mass.lumped.minCoeff() > 1e-10 * mass.lumped.maxCoeff()) return mass.lumped;
  const Eigen::VectorXd diag = mass.consistent.diagonal();
  return diag * (mass.lumped.sum() / diag.sum());
}

}  // namespace

double divergence_l2(const FESpace& space, const VectorField& B) {
  const BasisTable& tab = space.basis();
  double total = 0.0;
  for (int c = 0; c < space.num_cells(); ++c) {
    for (int q = 0; q < tab.rule.size(); ++q) {
      const Eigen::MatrixXd G = space.physical_gradients(c, tab.ref_gradients[q]);
      double div = 0.0;
      for (int i = 0; i < space.dofs_per_cell(); ++i) {
        const int dof = space.cell_dofs()(i, c);
        div += G(i, 0) * B(dof, 0) + G(i, 1) * B(dof, 1);
      }
      total += tab.rule.weights[q] * space.abs_det(c) * div * div;
    }
  }
  return std::sqrt(total);
}

DivergenceCleaner::DivergenceCleaner(const FESpace& space, const MassOperators& mass,
                                     PoissonOperator op, PoissonSolver solver)
    : space_(&space), diagonal_mass_(positive_diagonal_mass(mass)), op_(op), solver_kind_(solver) {
  const BasisTable& tab = space.basis();
  const int nb = space.dofs_per_cell();
  const int n = space.num_dofs();
  std::vector<Eigen::Triplet<double>> tx, ty;
  for (int c = 0; c < space.num_cells(); ++c) {
    Eigen::MatrixXd lx = Eigen::MatrixXd::Zero(nb, nb), ly = Eigen::MatrixXd::Zero(nb, nb);
    for (int q = 0; q < tab.rule.size(); ++q) {
      const double w = tab.rule.weights[q] * space.abs_det(c);
      const Eigen::MatrixXd G = space.physical_gradients(c, tab.ref_gradients[q]);
      // row v (test gradient), column j (trial value)
      lx.noalias() += w * G.col(0) * tab.values.col(q).transpose();
      ly.noalias() += w * G.col(1) * tab.values.col(q).transpose();
    }
    for (int v = 0; v < nb; ++v) {
      for (int j = 0; j < nb; ++j) {
        tx.emplace_back(space.cell_dofs()(v, c), space.cell_dofs()(j, c), lx(v, j));
        ty.emplace_back(space.cell_dofs()(v, c), space.cell_dofs()(j, c), ly(v, j));
      }
    }
  }
  Dx_.resize(n, n);
  Dy_.resize(n, n);
  Dx_.setFromTriplets(tx.begin(), tx.end());
  Dy_.setFromTriplets(ty.begin(), ty.end());
  DxT_ = Dx_.transpose();
  DyT_ = Dy_.transpose();
  absDx_ = Dx_.cwiseAbs();
  absDy_ = Dy_.cwiseAbs();

  if (op_ == PoissonOperator::Compatible) {
    const Eigen::VectorXd inv_lumped = diagonal_mass_.cwiseInverse();
    A_ = Dx_ * inv_lumped.asDiagonal() * DxT_ + Dy_ * inv_lumped.asDiagonal() * DyT_;
  } else {
    A_ = build_stiffness_matrix(space);
  }
  A_.prune(0.0);

  if (solver_kind_ == PoissonSolver::Factorized) {
    // The operator is singular (constants, and checkerboard modes on periodic
    // P1 meshes). A tiny diagonal shift makes it definite; iterative refinement
    // against the unshifted operator removes the shift from the solution.
    SparseMatrix shifted = A_;
    const Eigen::VectorXd diag = A_.diagonal();
    for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += kShift * diag[i];
    factor_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(shifted);
    if (factor_->info() != Eigen::Success) {
      throw SolverFailure("factorization of the cleaning Poisson operator failed");
    }
  }
}

Eigen::VectorXd DivergenceCleaner::weak_divergence(const VectorField& B) const {
  return Dx_ * B.col(0) + Dy_ * B.col(1);
}

double DivergenceCleaner::weak_divergence_norm(const VectorField& B) const {
  const Eigen::VectorXd d = weak_divergence(B);
  return std::sqrt(d.dot(d.cwiseQuotient(diagonal_mass_)));
}

Eigen::VectorXd DivergenceCleaner::solve(const Eigen::VectorXd& rhs, double scale,
                                         int* iterations) const {
  Eigen::VectorXd b = rhs;
  b.array() -= b.mean();
  const double tolerance = 1e-12 * std::max(b.norm(), scale);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(b.size());
  if (b.norm() <= tolerance) {
    if (iterations) *iterations = 0;
    return psi;
  }
  if (factor_) {
    psi = factor_->solve(b);
    int it = 0;
    for (; it < kMaxRefinements; ++it) {
      const Eigen::VectorXd r = b - A_ * psi;
      if (r.norm() <= tolerance) break;
      psi += factor_->solve(r);
    }
    if (it == kMaxRefinements) throw SolverFailure("cleaning Poisson solve did not converge");
    psi.array() -= psi.mean();
    if (iterations) *iterations = it;
  } else {
    SolverOptions options;
    options.zero_mean = true;
    options.relative_tolerance = tolerance / b.norm();
    const SolveStats stats = pcg_solve(A_, b, psi, options);
    if (iterations) *iterations = stats.iterations;
  }
  return psi;
}

VectorField DivergenceCleaner::clean(const VectorField& B, CleaningReport* report) const {
  const Eigen::VectorXd d = weak_divergence(B);
  // magnitude of the terms summed into d, used as the round-off floor
  const double scale = (absDx_ * B.col(0).cwiseAbs() + absDy_ * B.col(1).cwiseAbs()).norm();
  int iterations = 0;
  const Eigen::VectorXd psi = solve(d, scale, &iterations);
  VectorField out = B;
  out.col(0) -= (DxT_ * psi).cwiseQuotient(diagonal_mass_);
  out.col(1) -= (DyT_ * psi).cwiseQuotient(diagonal_mass_);
  if (report) {
    report->weak_divergence_before = std::sqrt(d.dot(d.cwiseQuotient(diagonal_mass_)));
    report->weak_divergence_after = weak_divergence_norm(out);
    report->iterations = iterations;
  }
  return out;
}

void DivergenceCleaner::clean_state(SolutionField& U, CleaningReport* report,
                                    CleaningEnergy energy) const {
  const VectorField B = U.middleCols<2>(kBx);
  U = postclean_consistency(U, clean(B, report), energy);
}

SolutionField postclean_consistency(const SolutionField& U, const VectorField& B,
                                    CleaningEnergy energy) {
  SolutionField out = U;
  out.middleCols<2>(kBx) = B;
  if (energy == CleaningEnergy::Pressure) {
    out.col(kEnergy) += 0.5 * (B.rowwise().squaredNorm() - U.middleCols<2>(kBx).rowwise().squaredNorm());
  }
  for (int i = 0; i < out.rows(); ++i) {
    const auto state = ConservedState<double>::from_vector(out.row(i).transpose());
    const double rho_e = internal_energy_density(state);
    if (!(rho_e > 0.0)) {
      std::ostringstream os;
      os << "nonpositive internal energy " << rho_e << " after divergence cleaning at node " << i;
      throw AdmissibilityError(AdmissibilityError::Kind::NonpositiveInternalEnergy, os.str());
    }
  }
  return out;
}

}  // namespace mhd
