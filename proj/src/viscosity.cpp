#include "mhd/viscosity.hpp"

#include <cmath>

#include "mhd/errors.hpp"

namespace mhd {

void ViscosityModel::validate() const {
  if (!(c_max > 0.0) || !(c_E > 0.0)) throw ConfigError("viscosity requires c_max > 0 and c_E > 0");
}

namespace {

ConservedState<double> node_state(const SolutionField& U, int i) {
  return ConservedState<double>::from_vector(U.row(i).transpose());
}

}  // namespace

ScalarField nodal_max_speed(const FESpace& space, const SolutionField& U, const GasModel<double>& gas) {
  ScalarField speed(U.rows());
  for (int i = 0; i < U.rows(); ++i) {
    speed[i] = max_coordinate_wave_speed(node_state(U, i), space.dim(), gas);
  }
  return speed;
}

ScalarField first_order_viscosity(const FESpace& space, const SolutionField& U, const ScalarField& h,
                                  const GasModel<double>& gas, double c_max) {
  return c_max * h.cwiseProduct(nodal_max_speed(space, U, gas));
}

ScalarField entropy_field(const SolutionField& U, const GasModel<double>& gas) {
  ScalarField S(U.rows());
  for (int i = 0; i < U.rows(); ++i) S[i] = entropy_pair(node_state(U, i), gas).S;
  return S;
}

VectorField entropy_flux_field(const SolutionField& U, const ScalarField& S) {
  VectorField F(U.rows(), 2);
  for (int i = 0; i < U.rows(); ++i) {
    F.row(i) = U.row(i).segment<2>(kMx) * (S[i] / U(i, kRho));
  }
  return F;
}

void EntropyHistory::push(double t, const ScalarField& S) {
  levels_.push_front({t, S});
  if (levels_.size() > 3) levels_.pop_back();
}

ScalarField EntropyHistory::time_derivative() const {
  if (!ready()) throw Error("entropy history needs at least two time levels");
  const Level& n0 = levels_[0];
  const Level& n1 = levels_[1];
  const double dt = n0.t - n1.t;
  if (size() == 2) return (n0.S - n1.S) / dt;
  const Level& n2 = levels_[2];
  const double w = dt / (n1.t - n2.t);
  const double a0 = (1.0 + 2.0 * w) / (1.0 + w);
  const double a1 = -(1.0 + w);
  const double a2 = w * w / (1.0 + w);
  return (a0 * n0.S + a1 * n1.S + a2 * n2.S) / dt;
}

ScalarField entropy_residual(const FESpace& space, const ScalarField& dSdt, const VectorField& flux) {
  const BasisTable& tab = space.basis();
  const int nb = space.dofs_per_cell();
  ScalarField R = ScalarField::Zero(space.num_dofs());
  for (int c = 0; c < space.num_cells(); ++c) {
    double measure = 0.0;
    for (int q = 0; q < tab.rule.size(); ++q) measure += tab.rule.weights[q] * space.abs_det(c);
    for (int q = 0; q < tab.rule.size(); ++q) {
      const Eigen::MatrixXd grads = space.physical_gradients(c, tab.ref_gradients[q]);
      double value = 0.0;
      for (int i = 0; i < nb; ++i) {
        const int dof = space.cell_dofs()(i, c);
        value += tab.values(i, q) * dSdt[dof] + grads.row(i).dot(flux.row(dof));
      }
      const double w = tab.rule.weights[q] * space.abs_det(c) * std::abs(value) / measure;
      for (int i = 0; i < nb; ++i) R[space.cell_dofs()(i, c)] += w * tab.values(i, q);
    }
  }
  return R;
}

ScalarField entropy_viscosity(const ScalarField& R, const ScalarField& h, const ScalarField& eps_L,
                              const ScalarField& lumped, const ScalarField& S, double c_E,
                              ResidualNormalization normalization, ScalarField* eps_H) {
  double deviation = 0.0;
  if (normalization == ResidualNormalization::EntropyDeviation) {
    const double mean = lumped.dot(S) / lumped.sum();
    deviation = (S.array() - mean).abs().maxCoeff();
  } else {
    const double mean = lumped.dot(R) / lumped.sum();
    const double max_variance = (R.array() - mean).abs().maxCoeff();
    deviation = (R.array() - max_variance).abs().maxCoeff();
  }
  ScalarField high = ScalarField::Zero(R.size());
  if (deviation >= 1e-14) high = (c_E / deviation) * h.cwiseProduct(h).cwiseProduct(R.cwiseAbs());
  if (eps_H) *eps_H = high;
  return high.cwiseMin(eps_L);
}

}  // namespace mhd
