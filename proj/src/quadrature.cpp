#include "mhd/quadrature.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mhd/errors.hpp"

namespace mhd {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw Error("Gauss-Legendre rule needs at least one point");
  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
  // Legendre recurrence, weights come from the first eigenvector components.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  QuadratureRule rule;
  rule.points.resize(1, n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points(0, i) = 0.5 * (eig.eigenvalues()[i] + 1.0);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;  // 2 v0^2 on [-1, 1], halved for [0, 1]
  }
  rule.degree = 2 * n - 1;
  return rule;
}

QuadratureRule interval_rule(int degree) {
  const int n = std::max(1, (degree + 2) / 2);
  QuadratureRule rule = gauss_legendre(n);
  return rule;
}

namespace {

// Fully symmetric orbit: barycentric (a, a, 1 - 2a) or (a, b, 1 - a - b).
struct Orbit {
  double a, b, weight;  // weight relative to the triangle area
};

void add_orbit(const Orbit& o, std::vector<Eigen::Vector2d>& pts, std::vector<double>& w) {
  const double c = 1.0 - o.a - o.b;
  std::vector<Eigen::Vector2d> candidates = {{o.a, o.b}, {o.b, o.a}, {o.a, c},
                                             {c, o.a},   {o.b, c},   {c, o.b}};
  std::vector<Eigen::Vector2d> unique;
  for (const auto& p : candidates) {
    bool seen = false;
    for (const auto& u : unique) seen = seen || (u - p).norm() < 1e-14;
    if (!seen) unique.push_back(p);
  }
  for (const auto& p : unique) {
    pts.push_back(p);
    w.push_back(0.5 * o.weight);
  }
}

QuadratureRule symmetric_rule(const std::vector<Orbit>& orbits, int degree) {
  QuadratureRule rule;
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> w;
  for (const auto& o : orbits) add_orbit(o, pts, w);
  rule.points.resize(2, static_cast<Eigen::Index>(pts.size()));
  rule.weights.resize(static_cast<Eigen::Index>(w.size()));
  for (std::size_t q = 0; q < pts.size(); ++q) {
    rule.points.col(static_cast<Eigen::Index>(q)) = pts[q];
    rule.weights[static_cast<Eigen::Index>(q)] = w[q];
  }
  rule.degree = degree;
  return rule;
}

}  // namespace

QuadratureRule triangle_rule(int degree) {
  // Dunavant rules with positive interior points up to degree 6.
  if (degree <= 1) return symmetric_rule({{1.0 / 3.0, 1.0 / 3.0, 1.0}}, 1);
  if (degree == 2) return symmetric_rule({{1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0}}, 2);
  if (degree <= 4) {
    return symmetric_rule({{0.445948490915965, 0.445948490915965, 0.223381589678011},
                           {0.091576213509771, 0.091576213509771, 0.109951743655322}},
                          4);
  }
  if (degree == 5) {
    return symmetric_rule({{1.0 / 3.0, 1.0 / 3.0, 0.225},
                           {0.470142064105115, 0.470142064105115, 0.132394152788506},
                           {0.101286507323456, 0.101286507323456, 0.125939180544827}},
                          5);
  }
  if (degree == 6) {
    return symmetric_rule({{0.249286745170910, 0.249286745170910, 0.116786275726379},
                           {0.063089014491502, 0.063089014491502, 0.050844906370207},
                           {0.053145049844817, 0.310352451033784, 0.082851075618374}},
                          6);
  }
  // (u, v) in [0,1]^2 -> (x, y) = (u, v (1 - u)), Jacobian (1 - u).
  // A degree-q polynomial becomes degree q + 1 in u and q in v.
  const int n = std::max(1, (degree + 3) / 2);
  const QuadratureRule g = gauss_legendre(n);
  QuadratureRule rule;
  rule.points.resize(2, n * n);
  rule.weights.resize(n * n);
  int q = 0;
  for (int i = 0; i < n; ++i) {
    const double u = g.points(0, i);
    for (int j = 0; j < n; ++j) {
      const double v = g.points(0, j);
      rule.points(0, q) = u;
      rule.points(1, q) = v * (1.0 - u);
      rule.weights[q] = g.weights[i] * g.weights[j] * (1.0 - u);
      ++q;
    }
  }
  rule.degree = 2 * n - 2;
  return rule;
}

QuadratureRule reference_rule(int dim, int degree) {
  return dim == 1 ? interval_rule(degree) : triangle_rule(degree);
}

}  // namespace mhd
