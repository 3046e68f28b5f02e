#include "mhd/rhs.hpp"

#include <sstream>

namespace mhd {

PointState evaluate_at(const FESpace& space, const BasisTable& table, const SolutionField& U,
                       int cell, int q) {
  const int nb = space.dofs_per_cell();
  PointState out;
  out.U.setZero();
  Eigen::Matrix<double, kNumComponents, 2> ref_grad = Eigen::Matrix<double, kNumComponents, 2>::Zero();
  for (int i = 0; i < nb; ++i) {
    const auto row = U.row(space.cell_dofs()(i, cell));
    out.U += table.values(i, q) * row.transpose();
    ref_grad += row.transpose() * table.ref_gradients[q].row(i);
  }
  out.grad = ref_grad * space.inverse_jacobian(cell);
  return out;
}

SemidiscreteOperator::SemidiscreteOperator(const FESpace& space, const MassOperators& mass,
                                           GasModel<double> gas, ViscousFluxChoice flux,
                                           MassTreatment treatment, const Constraints* constraints)
    : space_(&space),
      mass_(&mass),
      gas_(gas),
      flux_(flux),
      treatment_(treatment),
      constraints_(constraints) {
  gas_.validate();
  if (constraints_) constrained_ = constraints_->dirichlet_dofs();
  if (treatment_ == MassTreatment::Lumped) {
    if (mass.lumped.minCoeff() <= 1e-14 * mass.lumped.maxCoeff()) {
      throw Error("the lumped mass of this element is not positive; use the consistent mass");
    }
    return;
  }
  // Dirichlet rows of the consistent matrix are replaced by identity rows.
  SparseMatrix M = mass.consistent;
  if (!constrained_.empty()) {
    std::vector<char> fixed(space.num_dofs(), 0);
    for (int dof : constrained_) fixed[dof] = 1;
    M.prune([&fixed](Eigen::Index r, Eigen::Index c, double) { return !fixed[r] && !fixed[c]; });
    for (int dof : constrained_) M.coeffRef(dof, dof) = 1.0;
  }
  consistent_solver_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(M);
  if (consistent_solver_->info() != Eigen::Success) {
    throw SolverFailure("factorization of the consistent mass matrix failed");
  }
}

void SemidiscreteOperator::residual(const SolutionField& U, const ScalarField& eps,
                                    SolutionField& out) const {
  const FESpace& space = *space_;
  const BasisTable& tab = space.basis();
  const int nb = space.dofs_per_cell();
  out.setZero(space.num_dofs(), kNumComponents);
  LocalState local(nb, kNumComponents);
  LocalState cell_U(nb, kNumComponents);
  Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 10, 1> cell_eps(nb);
  LocalGradients grads(nb, 2);
  for (int c = 0; c < space.num_cells(); ++c) {
    for (int i = 0; i < nb; ++i) {
      const int dof = space.cell_dofs()(i, c);
      cell_U.row(i) = U.row(dof);
      cell_eps[i] = eps[dof];
    }
    const Eigen::Matrix2d& inv_jac = space.inverse_jacobian(c);
    const double det = space.abs_det(c);
    local.setZero();
    for (int q = 0; q < tab.rule.size(); ++q) {
      const auto phi = tab.values.col(q);
      grads.noalias() = tab.ref_gradients[q] * inv_jac;
      const StateVector<double> Uq = cell_U.transpose() * phi;
      const FluxMatrix<double> grad = cell_U.transpose() * grads;
      const double eps_q = cell_eps.dot(phi);
      const auto state = ConservedState<double>::from_vector(Uq);
      FluxMatrix<double> F;
      try {
        F = inviscid_flux(state, gas_).total() - viscous_flux(flux_, eps_q, state, grad, gas_);
      } catch (const AdmissibilityError& e) {
        const Eigen::Vector2d x = space.map_to_physical(c, tab.rule.points.col(q));
        std::ostringstream os;
        os << e.what() << " at quadrature point (" << x.x() << ", " << x.y() << ") of cell " << c;
        throw AdmissibilityError(e.kind(), os.str());
      }
      local.noalias() += (tab.rule.weights[q] * det) * grads * F.transpose();
    }
    for (int i = 0; i < nb; ++i) out.row(space.cell_dofs()(i, c)) += local.row(i);
  }
}

void SemidiscreteOperator::evaluate(const SolutionField& U, const ScalarField& eps,
                                    SolutionField& dUdt) const {
  residual(U, eps, dUdt);
  for (int dof : constrained_) dUdt.row(dof).setZero();
  if (treatment_ == MassTreatment::Lumped) {
    dUdt.array().colwise() /= mass_->lumped.array();
  } else {
    for (int comp = 0; comp < kNumComponents; ++comp) {
      dUdt.col(comp) = consistent_solver_->solve(Eigen::VectorXd(dUdt.col(comp)));
    }
  }
}

}  // namespace mhd
