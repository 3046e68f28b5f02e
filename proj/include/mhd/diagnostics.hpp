#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mhd/fespace.hpp"
#include "mhd/problems.hpp"
#include "mhd/thermo.hpp"

namespace mhd {

/// Quantity compared against a reference solution. Vector quantities use the
/// Euclidean norm of the pointwise difference.
enum class ErrorQuantity { Density, Velocity, Pressure, MagneticField };

std::string to_string(ErrorQuantity quantity);

struct ErrorEntry {
  ErrorQuantity quantity;
  double L1 = 0.0;
  double L2 = 0.0;
};

struct ErrorReport {
  int dofs = 0;
  int degree = 0;
  int dim = 2;
  std::vector<ErrorEntry> entries;

  const ErrorEntry& entry(ErrorQuantity quantity) const;
};

/// L1 and L2 errors of U_h against `reference(x, t)` using a rule of exactness
/// 2k + 3 (or `quadrature_degree` when non-negative).
ErrorReport error_norms(const FESpace& space, const SolutionField& U, const ExactSolution& reference,
                        double t, const GasModel<double>& gas,
                        std::vector<ErrorQuantity> quantities = {ErrorQuantity::Velocity,
                                                                 ErrorQuantity::MagneticField},
                        int quadrature_degree = -1);

/// Observed order between two refinements, with the mesh-size ratio taken
/// from DOF counts: (N_cur / N_prev)^(1/dim).
double observed_rate(double error_prev, double error_cur, int dofs_prev, int dofs_cur, int dim);

struct ConvergenceRow {
  int dofs = 0;
  int degree = 0;
  ErrorQuantity quantity;
  double L1 = 0.0;
  double L2 = 0.0;
  double rate_L1 = 0.0;  ///< NaN for the coarsest mesh
  double rate_L2 = 0.0;
};

/// Rows per (report, quantity) with rates against the previous report.
std::vector<ConvergenceRow> convergence_table(const std::vector<ErrorReport>& reports);

/// errors.csv: dofs,degree,component,L1,L2,rate. The rate column is the
/// observed L2 order, empty on the coarsest mesh.
void write_errors_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
/// Aligned text layout with L1, rate, L2, rate columns per quantity.
void write_convergence_text(std::ostream& os, const std::vector<ConvergenceRow>& rows);

struct MonitorRow {
  double t = 0.0;
  double min_s = 0.0;  ///< min_i ln(p_i / rho_i^gamma)
  double min_rho = 0.0;
  double min_rhoe = 0.0;
  double divB = 0.0;
  int violations = 0;  ///< nodes with rho <= 0 or rho e <= 0 (excluded from min_s)
};

/// Nodal minima of s, rho and rho e. Inadmissible nodes are counted, not thrown.
MonitorRow min_entropy_monitor(const SolutionField& U, double t, const GasModel<double>& gas,
                               double divB = 0.0);

/// entropy_history.csv: t,min_s,min_rho,min_rhoe,divB
void write_entropy_history_csv(std::ostream& os, const std::vector<MonitorRow>& rows);

struct Overshoot {
  double max_over = 0.0;
  double max_under = 0.0;
};

/// max(field - hi)^+ and max(lo - field)^+ over nodes.
Overshoot overshoot_metric(const ScalarField& field, double lo, double hi);

/// Nodal primitive variables, columns (rho, ux, uy, p, Bx, By). Pressure is
/// computed without admissibility checks so failed states can still be written.
Eigen::Matrix<double, Eigen::Dynamic, 6> primitive_fields(const SolutionField& U,
                                                          const GasModel<double>& gas);

}  // namespace mhd
