#pragma once

#include <Eigen/Dense>

namespace mhd {

/// Continuous Lagrange element of degree k on the reference interval or triangle,
/// with equispaced nodes. Node order: vertices, then edge nodes, then interior nodes.
class LagrangeElement {
 public:
  LagrangeElement(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int num_basis() const { return static_cast<int>(nodes_.cols()); }

  /// Reference node coordinates, dim x num_basis.
  const Eigen::MatrixXd& nodes() const { return nodes_; }

  /// Basis values at a reference point.
  Eigen::VectorXd values(const Eigen::VectorXd& xi) const;
  /// Reference gradients at a reference point, num_basis x dim.
  Eigen::MatrixXd gradients(const Eigen::VectorXd& xi) const;

 private:
  Eigen::VectorXd monomials(const Eigen::VectorXd& xi) const;
  Eigen::MatrixXd monomial_gradients(const Eigen::VectorXd& xi) const;

  int dim_;
  int degree_;
  Eigen::MatrixXi exponents_;  ///< 2 x num_basis monomial exponents
  Eigen::MatrixXd nodes_;
  Eigen::MatrixXd coefficients_;  ///< inverse Vandermonde: basis = coefficients^T monomials
};

}  // namespace mhd
