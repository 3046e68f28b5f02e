#pragma once

#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "mhd/lagrange.hpp"
#include "mhd/mesh.hpp"
#include "mhd/quadrature.hpp"
#include "mhd/thermo.hpp"

namespace mhd {

/// Nodal coefficients of a scalar function, one per global DOF.
using ScalarField = Eigen::VectorXd;
/// Nodal coefficients of a 2-vector function (column per component).
using VectorField = Eigen::Matrix<double, Eigen::Dynamic, 2>;
/// Nodal conserved state, component-major: column c holds every DOF of component c.
using SolutionField = Eigen::Matrix<double, Eigen::Dynamic, kNumComponents>;

using SparseMatrix = Eigen::SparseMatrix<double>;

struct PeriodicAxes {
  bool x = false;
  bool y = false;
};

/// Basis values and reference gradients tabulated at the points of a rule.
struct BasisTable {
  QuadratureRule rule;
  Eigen::MatrixXd values;                      ///< num_basis x num_points
  std::vector<Eigen::MatrixXd> ref_gradients;  ///< per point: num_basis x 2 (zero y-column in 1D)
};

/// Continuous Lagrange space of degree k over a mesh, with periodic identification.
class FESpace {
 public:
  /// quadrature_degree < 0 selects the default exactness 2k + 1.
  FESpace(Mesh mesh, int degree, PeriodicAxes periodic = {}, int quadrature_degree = -1);

  const Mesh& mesh() const { return mesh_; }
  int dim() const { return mesh_.dim(); }
  int degree() const { return element_.degree(); }
  const PeriodicAxes& periodic() const { return periodic_; }
  const LagrangeElement& element() const { return element_; }

  int num_dofs() const { return static_cast<int>(dof_coordinates_.cols()); }
  int num_cells() const { return mesh_.num_cells(); }
  int dofs_per_cell() const { return element_.num_basis(); }

  /// num_basis x num_cells global DOF indices.
  const Eigen::MatrixXi& cell_dofs() const { return cell_dofs_; }
  /// 2 x num_dofs coordinates of each global node (the non-wrapped representative).
  const Eigen::Matrix2Xd& dof_coordinates() const { return dof_coordinates_; }

  /// Default basis table (exactness 2k + 1).
  const BasisTable& basis() const { return basis_; }
  BasisTable make_basis_table(int quadrature_degree) const;

  double abs_det(int cell) const { return abs_det_[cell]; }
  const Eigen::Matrix2d& inverse_jacobian(int cell) const { return inv_jacobian_[cell]; }

  /// Physical gradients (num_basis x 2) from reference gradients.
  Eigen::MatrixXd physical_gradients(int cell, const Eigen::MatrixXd& ref_gradients) const {
    return ref_gradients * inv_jacobian_[cell];
  }
  Eigen::Vector2d map_to_physical(int cell, const Eigen::VectorXd& xi) const;

  /// DOFs on a non-periodic boundary side.
  std::vector<int> boundary_dofs(int marker) const;

 private:
  Mesh mesh_;
  LagrangeElement element_;
  PeriodicAxes periodic_;
  Eigen::MatrixXi cell_dofs_;
  Eigen::Matrix2Xd dof_coordinates_;
  std::vector<Eigen::Matrix2d> inv_jacobian_;
  std::vector<Eigen::Vector2d> origin_;
  std::vector<Eigen::Matrix2d> jacobian_;
  std::vector<double> abs_det_;
  BasisTable basis_;
};

/// Dirichlet values held fixed on marked boundary DOFs.
class Constraints {
 public:
  explicit Constraints(const FESpace& space) : space_(&space) {}

  /// Every DOF on `marker` takes `value` (one entry per field column).
  void add_dirichlet(int marker, const Eigen::RowVectorXd& value);
  /// Every DOF on `marker` keeps the row it has in `field`.
  void add_dirichlet_frozen(int marker, const Eigen::MatrixXd& field);

  void apply(Eigen::Ref<Eigen::MatrixXd> field) const;
  /// Zero the constrained rows (used for time derivatives).
  void zero_rows(Eigen::Ref<Eigen::MatrixXd> field) const;

  std::vector<int> dirichlet_dofs() const;
  bool empty() const { return values_.empty(); }

 private:
  std::vector<int> checked_dofs(int marker) const;

  const FESpace* space_;
  std::map<int, Eigen::RowVectorXd> values_;
};

struct MassOperators {
  SparseMatrix consistent;
  Eigen::VectorXd lumped;  ///< row sums of the consistent matrix
};

MassOperators build_mass_operators(const FESpace& space);

/// Stiffness matrix (grad phi_j, grad phi_i).
SparseMatrix build_stiffness_matrix(const FESpace& space);

struct SolverOptions {
  double relative_tolerance = 1e-12;
  int max_iterations = 10000;
  /// Singular system with constant nullspace: project the right-hand side and
  /// return the solution with zero arithmetic mean.
  bool zero_mean = false;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients; throws SolverFailure if the
/// tolerance is not reached. `x` holds the initial guess on entry.
SolveStats pcg_solve(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                     const SolverOptions& options = {});

/// Nodal interpolation of a scalar function.
ScalarField interpolate(const FESpace& space, const std::function<double(const Eigen::Vector2d&)>& f);

/// L2 projection through the consistent mass matrix.
ScalarField l2_project(const FESpace& space, const MassOperators& mass,
                       const std::function<double(const Eigen::Vector2d&)>& f,
                       SolveStats* stats = nullptr);

/// L2 projection of the cellwise constant h_K / k (h_K = circumradius).
ScalarField mesh_size_field(const FESpace& space, const MassOperators& mass);

/// Integral of a nodal field over the domain.
double integrate(const FESpace& space, const ScalarField& field);

}  // namespace mhd
