#include "mhd/diagnostics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "mhd/errors.hpp"

namespace mhd {

std::string to_string(ErrorQuantity quantity) {
  switch (quantity) {
    case ErrorQuantity::Density:
      return "rho";
    case ErrorQuantity::Velocity:
      return "u";
    case ErrorQuantity::Pressure:
      return "p";
    case ErrorQuantity::MagneticField:
      return "B";
  }
  return "?";
}

const ErrorEntry& ErrorReport::entry(ErrorQuantity quantity) const {
  for (const auto& e : entries) {
    if (e.quantity == quantity) return e;
  }
  throw Error("error report has no entry for " + to_string(quantity));
}

namespace {

double pointwise_error(ErrorQuantity quantity, const PrimitiveState<double>& a,
                       const PrimitiveState<double>& b) {
  switch (quantity) {
    case ErrorQuantity::Density:
      return std::abs(a.rho - b.rho);
    case ErrorQuantity::Velocity:
      return (a.u - b.u).norm();
    case ErrorQuantity::Pressure:
      return std::abs(a.p - b.p);
    case ErrorQuantity::MagneticField:
      return (a.B - b.B).norm();
  }
  return 0.0;
}

}  // namespace

ErrorReport error_norms(const FESpace& space, const SolutionField& U, const ExactSolution& reference,
                        double t, const GasModel<double>& gas,
                        std::vector<ErrorQuantity> quantities, int quadrature_degree) {
  if (!reference) throw Error("error_norms needs a reference solution");
  const int qdeg = quadrature_degree >= 0 ? quadrature_degree : 2 * space.degree() + 3;
  const BasisTable tab = space.make_basis_table(qdeg);
  const int nb = space.dofs_per_cell();

  ErrorReport report;
  report.dofs = space.num_dofs();
  report.degree = space.degree();
  report.dim = space.dim();
  std::vector<double> l1(quantities.size(), 0.0), l2(quantities.size(), 0.0);

  for (int c = 0; c < space.num_cells(); ++c) {
    for (int q = 0; q < tab.rule.size(); ++q) {
      StateVector<double> Uq = StateVector<double>::Zero();
      for (int i = 0; i < nb; ++i) {
        Uq += tab.values(i, q) * U.row(space.cell_dofs()(i, c)).transpose();
      }
      const auto Ph = primitive_from_conserved(ConservedState<double>::from_vector(Uq), gas);
      const Eigen::Vector2d x = space.map_to_physical(c, tab.rule.points.col(q));
      const PrimitiveState<double> Pr = reference(x, t);
      const double w = tab.rule.weights[q] * space.abs_det(c);
      for (std::size_t k = 0; k < quantities.size(); ++k) {
        const double e = pointwise_error(quantities[k], Ph, Pr);
        l1[k] += w * e;
        l2[k] += w * e * e;
      }
    }
  }
  for (std::size_t k = 0; k < quantities.size(); ++k) {
    report.entries.push_back({quantities[k], l1[k], std::sqrt(l2[k])});
  }
  return report;
}

double observed_rate(double error_prev, double error_cur, int dofs_prev, int dofs_cur, int dim) {
  const double h_ratio = std::pow(static_cast<double>(dofs_cur) / dofs_prev, 1.0 / dim);
  return std::log(error_prev / error_cur) / std::log(h_ratio);
}

std::vector<ConvergenceRow> convergence_table(const std::vector<ErrorReport>& reports) {
  std::vector<ConvergenceRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < reports.size(); ++r) {
    for (const auto& e : reports[r].entries) {
      ConvergenceRow row;
      row.dofs = reports[r].dofs;
      row.degree = reports[r].degree;
      row.quantity = e.quantity;
      row.L1 = e.L1;
      row.L2 = e.L2;
      row.rate_L1 = nan;
      row.rate_L2 = nan;
      if (r > 0) {
        const ErrorEntry& prev = reports[r - 1].entry(e.quantity);
        const int dim = reports[r].dim;
        row.rate_L1 = observed_rate(prev.L1, e.L1, reports[r - 1].dofs, row.dofs, dim);
        row.rate_L2 = observed_rate(prev.L2, e.L2, reports[r - 1].dofs, row.dofs, dim);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_errors_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "dofs,degree,component,L1,L2,rate\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.dofs << ',' << r.degree << ',' << to_string(r.quantity) << ',' << r.L1 << ',' << r.L2
       << ',';
    if (!std::isnan(r.rate_L2)) os << r.rate_L2;
    os << '\n';
  }
}

void write_convergence_text(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  const auto flags = os.flags();
  os << std::setw(10) << "DOFs" << std::setw(4) << "k" << std::setw(6) << "field" << std::setw(12)
     << "L1" << std::setw(8) << "rate" << std::setw(12) << "L2" << std::setw(8) << "rate" << '\n';
  for (const auto& r : rows) {
    os << std::setw(10) << r.dofs << std::setw(4) << r.degree << std::setw(6) << to_string(r.quantity)
       << std::scientific << std::setprecision(2) << std::setw(12) << r.L1;
    os << std::fixed << std::setprecision(2) << std::setw(8);
    if (std::isnan(r.rate_L1)) os << "--"; else os << r.rate_L1;
    os << std::scientific << std::setw(12) << r.L2 << std::fixed << std::setw(8);
    if (std::isnan(r.rate_L2)) os << "--"; else os << r.rate_L2;
    os << '\n';
  }
  os.flags(flags);
}

MonitorRow min_entropy_monitor(const SolutionField& U, double t, const GasModel<double>& gas,
                               double divB) {
  MonitorRow row;
  row.t = t;
  row.divB = divB;
  row.min_s = std::numeric_limits<double>::infinity();
  row.min_rho = std::numeric_limits<double>::infinity();
  row.min_rhoe = std::numeric_limits<double>::infinity();
  for (int i = 0; i < U.rows(); ++i) {
    const auto state = ConservedState<double>::from_vector(U.row(i).transpose());
    const double rho_e = internal_energy_density(state);
    row.min_rho = std::min(row.min_rho, state.rho);
    row.min_rhoe = std::min(row.min_rhoe, rho_e);
    if (!(state.rho > 0.0) || !(rho_e > 0.0)) {
      ++row.violations;
      continue;
    }
    const double p = (gas.gamma - 1.0) * rho_e;
    row.min_s = std::min(row.min_s, std::log(p) - gas.gamma * std::log(state.rho));
  }
  return row;
}

void write_entropy_history_csv(std::ostream& os, const std::vector<MonitorRow>& rows) {
  os << "t,min_s,min_rho,min_rhoe,divB\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.t << ',' << r.min_s << ',' << r.min_rho << ',' << r.min_rhoe << ',' << r.divB << '\n';
  }
}

Overshoot overshoot_metric(const ScalarField& field, double lo, double hi) {
  Overshoot o;
  if (field.size() == 0) return o;
  o.max_over = std::max(0.0, field.maxCoeff() - hi);
  o.max_under = std::max(0.0, lo - field.minCoeff());
  return o;
}

Eigen::Matrix<double, Eigen::Dynamic, 6> primitive_fields(const SolutionField& U,
                                                          const GasModel<double>& gas) {
  Eigen::Matrix<double, Eigen::Dynamic, 6> P(U.rows(), 6);
  for (int i = 0; i < U.rows(); ++i) {
    const auto state = ConservedState<double>::from_vector(U.row(i).transpose());
    const Eigen::Vector2d u = state.m / state.rho;
    P(i, 0) = state.rho;
    P(i, 1) = u[0];
    P(i, 2) = u[1];
    P(i, 3) = (gas.gamma - 1.0) * internal_energy_density(state);
    P(i, 4) = state.B[0];
    P(i, 5) = state.B[1];
  }
  return P;
}

}  // namespace mhd
