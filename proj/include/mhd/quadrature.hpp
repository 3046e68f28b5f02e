#pragma once

#include <Eigen/Dense>

namespace mhd {

/// Quadrature on a reference cell: points are stored column-wise (dim x n).
/// The reference interval is [0, 1]; the reference triangle has vertices
/// (0,0), (1,0), (0,1).
struct QuadratureRule {
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;
  int degree = 0;  ///< polynomials up to this degree are integrated exactly

  int size() const { return static_cast<int>(weights.size()); }
};

/// n-point Gauss-Legendre rule on [0, 1] (exact to degree 2n - 1).
QuadratureRule gauss_legendre(int n);

/// Cheapest Gauss-Legendre rule on [0, 1] exact to `degree`.
QuadratureRule interval_rule(int degree);

/// Rule on the reference triangle exact to `degree`: symmetric Dunavant rules
/// up to degree 6, collapsed Gauss products beyond.
QuadratureRule triangle_rule(int degree);

QuadratureRule reference_rule(int dim, int degree);

}  // namespace mhd
