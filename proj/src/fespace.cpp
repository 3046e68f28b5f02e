#include "mhd/fespace.hpp"

#include <cmath>
#include <sstream>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

using Key = std::pair<long long, long long>;

/// Locates coincident nodes by quantized coordinates; neighbouring cells of
/// the quantization lattice are searched so points straddling a cell edge
/// still match.
class NodeLocator {
 public:
  NodeLocator(double quantum, double tolerance) : quantum_(quantum), tolerance_(tolerance) {}

  int find_or_insert(const Eigen::Vector2d& x, std::vector<Eigen::Vector2d>& coords) {
    const long long kx = std::llround(x.x() / quantum_);
    const long long ky = std::llround(x.y() / quantum_);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = index_.find({kx + dx, ky + dy});
        if (it != index_.end() && (coords[it->second] - x).norm() < tolerance_) return it->second;
      }
    }
    const int id = static_cast<int>(coords.size());
    coords.push_back(x);
    index_.emplace(Key{kx, ky}, id);
    return id;
  }

 private:
  double quantum_;
  double tolerance_;
  std::map<Key, int> index_;
};

}  // namespace

FESpace::FESpace(Mesh mesh, int degree, PeriodicAxes periodic, int quadrature_degree)
    : mesh_(std::move(mesh)), element_(mesh_.dim(), degree), periodic_(periodic) {
  if (mesh_.dim() == 1) periodic_.y = false;
  const int nc = mesh_.num_cells();
  const int nb = element_.num_basis();
  const Box& box = mesh_.bounds();

  jacobian_.resize(nc);
  inv_jacobian_.resize(nc);
  origin_.resize(nc);
  abs_det_.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const Eigen::Vector2d v0 = mesh_.vertices().col(mesh_.cells()(0, c));
    const Eigen::Vector2d v1 = mesh_.vertices().col(mesh_.cells()(1, c));
    Eigen::Matrix2d J = Eigen::Matrix2d::Identity();
    J.col(0) = v1 - v0;
    if (mesh_.dim() == 2) {
      J.col(1) = mesh_.vertices().col(mesh_.cells()(2, c)) - v0;
    } else {
      J(1, 0) = 0.0;
    }
    origin_[c] = v0;
    jacobian_[c] = J;
    inv_jacobian_[c] = J.inverse();
    abs_det_[c] = std::abs(J.determinant());
  }

  const double spacing = mesh_.min_edge_length() / degree;
  const double tol = 1e-6 * spacing;
  NodeLocator locator(0.25 * spacing, tol);
  std::vector<Eigen::Vector2d> coords;
  cell_dofs_.resize(nb, nc);
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < nb; ++i) {
      Eigen::Vector2d x = map_to_physical(c, element_.nodes().col(i));
      if (periodic_.x && std::abs(x.x() - box.x_max) < tol) x.x() = box.x_min;
      if (periodic_.y && std::abs(x.y() - box.y_max) < tol) x.y() = box.y_min;
      cell_dofs_(i, c) = locator.find_or_insert(x, coords);
    }
  }
  dof_coordinates_.resize(2, static_cast<int>(coords.size()));
  for (int i = 0; i < dof_coordinates_.cols(); ++i) dof_coordinates_.col(i) = coords[i];

  basis_ = make_basis_table(quadrature_degree < 0 ? 2 * degree + 1 : quadrature_degree);
}

BasisTable FESpace::make_basis_table(int quadrature_degree) const {
  BasisTable table;
  table.rule = reference_rule(dim(), quadrature_degree);
  const int nq = table.rule.size();
  const int nb = element_.num_basis();
  table.values.resize(nb, nq);
  table.ref_gradients.resize(nq);
  for (int q = 0; q < nq; ++q) {
    const Eigen::VectorXd xi = table.rule.points.col(q);
    table.values.col(q) = element_.values(xi);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nb, 2);
    g.leftCols(dim()) = element_.gradients(xi);
    table.ref_gradients[q] = g;
  }
  return table;
}

Eigen::Vector2d FESpace::map_to_physical(int cell, const Eigen::VectorXd& xi) const {
  Eigen::Vector2d ref = Eigen::Vector2d::Zero();
  ref.head(xi.size()) = xi;
  return origin_[cell] + jacobian_[cell] * ref;
}

std::vector<int> FESpace::boundary_dofs(int marker) const {
  const Box& box = mesh_.bounds();
  const double tol = 1e-6 * mesh_.min_edge_length() / degree();
  std::vector<int> out;
  for (int i = 0; i < num_dofs(); ++i) {
    const Eigen::Vector2d x = dof_coordinates_.col(i);
    bool on = false;
    switch (marker) {
      case kLeft: on = std::abs(x.x() - box.x_min) < tol; break;
      case kRight: on = std::abs(x.x() - box.x_max) < tol; break;
      case kBottom: on = dim() == 2 && std::abs(x.y() - box.y_min) < tol; break;
      case kTop: on = dim() == 2 && std::abs(x.y() - box.y_max) < tol; break;
      default: break;
    }
    if (on) out.push_back(i);
  }
  return out;
}

std::vector<int> Constraints::checked_dofs(int marker) const {
  const bool periodic_side = ((marker == kLeft || marker == kRight) && space_->periodic().x) ||
                             ((marker == kBottom || marker == kTop) && space_->periodic().y);
  if (!space_->mesh().has_marker(marker) || periodic_side) {
    std::ostringstream os;
    os << "boundary marker " << marker << " is not a non-periodic boundary of this mesh";
    throw UnknownBoundaryMarker(os.str());
  }
  return space_->boundary_dofs(marker);
}

void Constraints::add_dirichlet(int marker, const Eigen::RowVectorXd& value) {
  for (int dof : checked_dofs(marker)) values_[dof] = value;
}

void Constraints::add_dirichlet_frozen(int marker, const Eigen::MatrixXd& field) {
  for (int dof : checked_dofs(marker)) values_[dof] = field.row(dof);
}

void Constraints::apply(Eigen::Ref<Eigen::MatrixXd> field) const {
  for (const auto& [dof, value] : values_) field.row(dof) = value;
}

void Constraints::zero_rows(Eigen::Ref<Eigen::MatrixXd> field) const {
  for (const auto& entry : values_) field.row(entry.first).setZero();
}

std::vector<int> Constraints::dirichlet_dofs() const {
  std::vector<int> out;
  out.reserve(values_.size());
  for (const auto& entry : values_) out.push_back(entry.first);
  return out;
}

MassOperators build_mass_operators(const FESpace& space) {
  const BasisTable& tab = space.basis();
  const int nb = space.dofs_per_cell();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(space.num_cells()) * nb * nb);
  Eigen::MatrixXd local(nb, nb);
  for (int c = 0; c < space.num_cells(); ++c) {
    local.setZero();
    for (int q = 0; q < tab.rule.size(); ++q) {
      const double w = tab.rule.weights[q] * space.abs_det(c);
      local.noalias() += w * tab.values.col(q) * tab.values.col(q).transpose();
    }
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) {
        triplets.emplace_back(space.cell_dofs()(i, c), space.cell_dofs()(j, c), local(i, j));
      }
    }
  }
  MassOperators ops;
  ops.consistent.resize(space.num_dofs(), space.num_dofs());
  ops.consistent.setFromTriplets(triplets.begin(), triplets.end());
  ops.lumped = ops.consistent * Eigen::VectorXd::Ones(space.num_dofs());
  return ops;
}

SparseMatrix build_stiffness_matrix(const FESpace& space) {
  const BasisTable& tab = space.basis();
  const int nb = space.dofs_per_cell();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(space.num_cells()) * nb * nb);
  Eigen::MatrixXd local(nb, nb);
  for (int c = 0; c < space.num_cells(); ++c) {
    local.setZero();
    for (int q = 0; q < tab.rule.size(); ++q) {
      const double w = tab.rule.weights[q] * space.abs_det(c);
      const Eigen::MatrixXd G = space.physical_gradients(c, tab.ref_gradients[q]);
      local.noalias() += w * G * G.transpose();
    }
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) {
        triplets.emplace_back(space.cell_dofs()(i, c), space.cell_dofs()(j, c), local(i, j));
      }
    }
  }
  SparseMatrix K(space.num_dofs(), space.num_dofs());
  K.setFromTriplets(triplets.begin(), triplets.end());
  return K;
}

SolveStats pcg_solve(const SparseMatrix& A, const Eigen::VectorXd& b_in, Eigen::VectorXd& x,
                     const SolverOptions& options) {
  const Eigen::Index n = b_in.size();
  Eigen::VectorXd b = b_in;
  if (options.zero_mean) b.array() -= b.mean();
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd inv_diag = A.diagonal();
  for (Eigen::Index i = 0; i < n; ++i) inv_diag[i] = inv_diag[i] != 0.0 ? 1.0 / inv_diag[i] : 1.0;

  SolveStats stats;
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    x.setZero();
    return stats;
  }
  Eigen::VectorXd r = b - A * x;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  Eigen::VectorXd Ap(n);
  double rz = r.dot(z);
  stats.relative_residual = r.norm() / b_norm;
  while (stats.relative_residual > options.relative_tolerance) {
    if (stats.iterations >= options.max_iterations) {
      std::ostringstream os;
      os << "PCG did not converge in " << options.max_iterations
         << " iterations (relative residual " << stats.relative_residual << ")";
      throw SolverFailure(os.str());
    }
    Ap.noalias() = A * p;
    const double alpha = rz / p.dot(Ap);
    x += alpha * p;
    r -= alpha * Ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++stats.iterations;
    stats.relative_residual = r.norm() / b_norm;
  }
  if (options.zero_mean) x.array() -= x.mean();
  return stats;
}

ScalarField interpolate(const FESpace& space,
                        const std::function<double(const Eigen::Vector2d&)>& f) {
  ScalarField out(space.num_dofs());
  for (int i = 0; i < space.num_dofs(); ++i) out[i] = f(space.dof_coordinates().col(i));
  return out;
}

namespace {

Eigen::VectorXd load_vector(const FESpace& space,
                            const std::function<double(int cell, const Eigen::Vector2d&)>& f) {
  const BasisTable& tab = space.basis();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.num_dofs());
  for (int c = 0; c < space.num_cells(); ++c) {
    for (int q = 0; q < tab.rule.size(); ++q) {
      const Eigen::Vector2d x = space.map_to_physical(c, tab.rule.points.col(q));
      const double w = tab.rule.weights[q] * space.abs_det(c) * f(c, x);
      for (int i = 0; i < space.dofs_per_cell(); ++i) {
        b[space.cell_dofs()(i, c)] += w * tab.values(i, q);
      }
    }
  }
  return b;
}

Eigen::VectorXd consistent_mass_solve(const MassOperators& mass, const Eigen::VectorXd& b,
                                      SolveStats* stats) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  SolverOptions options;
  options.relative_tolerance = 1e-14;
  const SolveStats s = pcg_solve(mass.consistent, b, x, options);
  if (stats) *stats = s;
  return x;
}

}  // namespace

ScalarField l2_project(const FESpace& space, const MassOperators& mass,
                       const std::function<double(const Eigen::Vector2d&)>& f, SolveStats* stats) {
  const Eigen::VectorXd b = load_vector(space, [&f](int, const Eigen::Vector2d& x) { return f(x); });
  return consistent_mass_solve(mass, b, stats);
}

ScalarField mesh_size_field(const FESpace& space, const MassOperators& mass) {
  const double k = space.degree();
  const Mesh& mesh = space.mesh();
  const Eigen::VectorXd b =
      load_vector(space, [&](int c, const Eigen::Vector2d&) { return mesh.circumradius(c) / k; });
  return consistent_mass_solve(mass, b, nullptr);
}

double integrate(const FESpace& space, const ScalarField& field) {
  const BasisTable& tab = space.basis();
  double total = 0.0;
  for (int c = 0; c < space.num_cells(); ++c) {
    for (int q = 0; q < tab.rule.size(); ++q) {
      double value = 0.0;
      for (int i = 0; i < space.dofs_per_cell(); ++i) {
        value += tab.values(i, q) * field[space.cell_dofs()(i, c)];
      }
      total += tab.rule.weights[q] * space.abs_det(c) * value;
    }
  }
  return total;
}

}  // namespace mhd
