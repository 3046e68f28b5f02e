#include "mhd/lagrange.hpp"

#include <cmath>
#include <vector>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

Eigen::MatrixXd interval_nodes(int k) {
  Eigen::MatrixXd nodes(1, k + 1);
  nodes(0, 0) = 0.0;
  nodes(0, 1) = 1.0;
  for (int i = 1; i < k; ++i) nodes(0, i + 1) = static_cast<double>(i) / k;
  return nodes;
}

Eigen::MatrixXd triangle_nodes(int k) {
  std::vector<Eigen::Vector2d> pts;
  const Eigen::Vector2d v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (const auto& p : v) pts.push_back(p);
  for (int e = 0; e < 3; ++e) {
    const Eigen::Vector2d& a = v[e];
    const Eigen::Vector2d& b = v[(e + 1) % 3];
    for (int i = 1; i < k; ++i) pts.push_back(a + (b - a) * (static_cast<double>(i) / k));
  }
  for (int j = 1; j < k; ++j) {
    for (int i = 1; i + j < k; ++i) {
      pts.emplace_back(static_cast<double>(i) / k, static_cast<double>(j) / k);
    }
  }
  Eigen::MatrixXd nodes(2, static_cast<int>(pts.size()));
  for (int i = 0; i < nodes.cols(); ++i) nodes.col(i) = pts[i];
  return nodes;
}

}  // namespace

LagrangeElement::LagrangeElement(int dim, int degree) : dim_(dim), degree_(degree) {
  if ((dim != 1 && dim != 2) || degree < 1 || degree > 3) {
    throw Error("Lagrange elements are available for dim 1/2 and degree 1..3");
  }
  nodes_ = dim == 1 ? interval_nodes(degree) : triangle_nodes(degree);
  const int nb = num_basis();
  exponents_.resize(2, nb);
  int m = 0;
  for (int total = 0; total <= degree; ++total) {
    if (dim == 1) {
      exponents_.col(m++) << total, 0;
    } else {
      for (int a = total; a >= 0; --a) exponents_.col(m++) << a, total - a;
    }
  }
  Eigen::MatrixXd vandermonde(nb, nb);
  for (int i = 0; i < nb; ++i) vandermonde.row(i) = monomials(nodes_.col(i)).transpose();
  coefficients_ = vandermonde.inverse();
}

Eigen::VectorXd LagrangeElement::monomials(const Eigen::VectorXd& xi) const {
  const int nb = static_cast<int>(exponents_.cols());
  const double y = dim_ == 2 ? xi[1] : 0.0;
  Eigen::VectorXd out(nb);
  for (int m = 0; m < nb; ++m) out[m] = ipow(xi[0], exponents_(0, m)) * ipow(y, exponents_(1, m));
  return out;
}

Eigen::MatrixXd LagrangeElement::monomial_gradients(const Eigen::VectorXd& xi) const {
  const int nb = static_cast<int>(exponents_.cols());
  const double x = xi[0];
  const double y = dim_ == 2 ? xi[1] : 0.0;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nb, dim_);
  for (int m = 0; m < nb; ++m) {
    const int a = exponents_(0, m);
    const int b = exponents_(1, m);
    if (a > 0) out(m, 0) = a * ipow(x, a - 1) * ipow(y, b);
    if (dim_ == 2 && b > 0) out(m, 1) = b * ipow(x, a) * ipow(y, b - 1);
  }
  return out;
}

Eigen::VectorXd LagrangeElement::values(const Eigen::VectorXd& xi) const {
  return coefficients_.transpose() * monomials(xi);
}

Eigen::MatrixXd LagrangeElement::gradients(const Eigen::VectorXd& xi) const {
  return coefficients_.transpose() * monomial_gradients(xi);
}

}  // namespace mhd
