#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhd/errors.hpp"
#include "mhd/fespace.hpp"

using mhd::Box;
using mhd::FESpace;

namespace {

const Box kUnitSquare{0.0, 1.0, 0.0, 1.0};

double polynomial(const Eigen::Vector2d& x, int degree) {
  double v = 0.3;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) v += 0.1 * (a + 1) * std::pow(x.x(), a) * std::pow(x.y(), b) / (b + 1);
  }
  return v;
}

}  // namespace

TEST_CASE("interval and rectangle meshes") {
  CHECK(mhd::build_interval_mesh(160, 0, 1).num_vertices() == 161);
  CHECK(mhd::build_interval_mesh(1, 0, 1).num_vertices() == 2);
  CHECK(FESpace(mhd::build_interval_mesh(640, 0, 1), 1).num_dofs() == 641);
  CHECK_THROWS_AS(mhd::build_interval_mesh(0, 0, 1), mhd::InvalidDomain);
  CHECK_THROWS_AS(mhd::build_interval_mesh(4, 1, 0), mhd::InvalidDomain);

  const auto m = mhd::build_triangulated_rectangle(2, 2, kUnitSquare);
  CHECK(m.num_cells() == 8);
  CHECK(m.num_vertices() == 9);
  CHECK(m.measure() == doctest::Approx(1.0));
  for (int c = 0; c < m.num_cells(); ++c) CHECK(m.cell_measure(c) > 0.0);
  const auto crossed = mhd::build_triangulated_rectangle(3, 2, kUnitSquare, mhd::TrianglePattern::Crossed);
  CHECK(crossed.num_cells() == 24);
  CHECK(crossed.measure() == doctest::Approx(1.0));
  CHECK_THROWS_AS(mhd::build_triangulated_rectangle(0, 2, kUnitSquare), mhd::InvalidDomain);
}

TEST_CASE("DOF counts") {
  for (int k = 1; k <= 3; ++k) {
    const FESpace space(mhd::build_triangulated_rectangle(5, 4, kUnitSquare), k);
    CHECK(space.num_dofs() == (k * 5 + 1) * (k * 4 + 1));
    const FESpace periodic(mhd::build_triangulated_rectangle(5, 4, kUnitSquare), k, {true, true});
    CHECK(periodic.num_dofs() == (k * 5) * (k * 4));
    const FESpace line(mhd::build_interval_mesh(7, -1, 2), k);
    CHECK(line.num_dofs() == 7 * k + 1);
  }
  CHECK((3 * 100 + 1) * (3 * 100 + 1) == 90601);
}

TEST_CASE("partition of unity at quadrature points") {
  for (int dim = 1; dim <= 2; ++dim) {
    for (int k = 1; k <= 3; ++k) {
      const mhd::LagrangeElement el(dim, k);
      const auto rule = mhd::reference_rule(dim, 2 * k + 1);
      for (int q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd xi = rule.points.col(q);
        CHECK(std::abs(el.values(xi).sum() - 1.0) <= 1e-13);
        CHECK(el.gradients(xi).colwise().sum().norm() <= 1e-12);
      }
      for (int i = 0; i < el.num_basis(); ++i) {
        const Eigen::VectorXd v = el.values(el.nodes().col(i));
        CHECK((v - Eigen::VectorXd::Unit(el.num_basis(), i)).norm() <= 1e-12);
      }
    }
  }
}

TEST_CASE("quadrature exactness") {
  for (int degree = 0; degree <= 9; ++degree) {
    const auto line = mhd::interval_rule(degree);
    CHECK(line.degree >= degree);
    for (int a = 0; a <= degree; ++a) {
      double sum = 0;
      for (int q = 0; q < line.size(); ++q) sum += line.weights[q] * std::pow(line.points(0, q), a);
      CHECK(sum == doctest::Approx(1.0 / (a + 1)).epsilon(1e-13));
    }
    const auto tri = mhd::triangle_rule(degree);
    CHECK(tri.degree >= degree);
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double sum = 0;
        for (int q = 0; q < tri.size(); ++q) {
          sum += tri.weights[q] * std::pow(tri.points(0, q), a) * std::pow(tri.points(1, q), b);
        }
        // int x^a y^b over the reference triangle = a! b! / (a + b + 2)!
        const double exact = std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("mass operators") {
  const int n = 8;
  const double delta = 1.0 / n;
  const FESpace line(mhd::build_interval_mesh(n, 0, 1), 1);
  const auto mass = mhd::build_mass_operators(line);
  CHECK(mass.lumped.sum() == doctest::Approx(1.0));
  for (int i = 0; i < line.num_dofs(); ++i) {
    const double x = line.dof_coordinates()(0, i);
    if (x > 1e-12 && x < 1 - 1e-12) CHECK(mass.lumped[i] == doctest::Approx(delta));
  }
  for (int k = 1; k <= 3; ++k) {
    const FESpace space(mhd::build_triangulated_rectangle(4, 3, Box{0, 2, 0, 1}), k);
    const auto ops = mhd::build_mass_operators(space);
    CHECK(ops.lumped.sum() == doctest::Approx(2.0).epsilon(1e-13));
    const Eigen::VectorXd rows = ops.consistent * Eigen::VectorXd::Ones(space.num_dofs());
    CHECK((rows - ops.lumped).norm() <= 1e-13);
    CHECK((mhd::SparseMatrix(ops.consistent.transpose()) - ops.consistent).norm() <= 1e-15);
    // lumped pairing integrates the interpolant of a degree-k polynomial exactly for P1
    const auto f = mhd::interpolate(space, [k](const Eigen::Vector2d& x) { return polynomial(x, k); });
    const double exact = mhd::integrate(space, f);
    CHECK(Eigen::VectorXd::Ones(space.num_dofs()).dot(ops.consistent * f) == doctest::Approx(exact).epsilon(1e-12));
    if (k == 1) CHECK(ops.lumped.dot(f) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("L2 projection reproduces polynomials and converges") {
  for (int dim = 1; dim <= 2; ++dim) {
    for (int k = 1; k <= 3; ++k) {
      const auto mesh = dim == 1 ? mhd::build_interval_mesh(5, 0, 1)
                                 : mhd::build_triangulated_rectangle(3, 3, kUnitSquare);
      const FESpace space(mesh, k);
      const auto mass = mhd::build_mass_operators(space);
      auto poly = [k](const Eigen::Vector2d& x) { return polynomial(x, k); };
      mhd::SolveStats stats;
      const auto proj = mhd::l2_project(space, mass, poly, &stats);
      CHECK(stats.relative_residual <= 1e-12);
      const auto interp = mhd::interpolate(space, poly);
      INFO("dim " << dim << " k " << k);
      CHECK((proj - interp).lpNorm<Eigen::Infinity>() <= 1e-12);
      const auto c = mhd::l2_project(space, mass, [](const Eigen::Vector2d&) { return 2.5; });
      CHECK((c.array() - 2.5).abs().maxCoeff() <= 1e-12);
    }
  }

  for (int k = 1; k <= 3; ++k) {
    double previous = 0;
    for (int n : {8, 16, 32}) {
      const FESpace space(mhd::build_interval_mesh(n, 0, 1), k);
      const auto mass = mhd::build_mass_operators(space);
      auto f = [](const Eigen::Vector2d& x) { return std::sin(2 * std::numbers::pi * x.x()); };
      const auto proj = mhd::l2_project(space, mass, f);
      const auto fine = space.make_basis_table(2 * k + 6);
      double err2 = 0;
      for (int c = 0; c < space.num_cells(); ++c) {
        for (int q = 0; q < fine.rule.size(); ++q) {
          double v = 0;
          for (int i = 0; i < space.dofs_per_cell(); ++i) v += fine.values(i, q) * proj[space.cell_dofs()(i, c)];
          const double d = v - f(space.map_to_physical(c, fine.rule.points.col(q)));
          err2 += fine.rule.weights[q] * space.abs_det(c) * d * d;
        }
      }
      const double err = std::sqrt(err2);
      if (previous > 0) CHECK(std::log2(previous / err) == doctest::Approx(k + 1).epsilon(0.08));
      previous = err;
    }
  }
}

TEST_CASE("mesh size field") {
  const int n = 16;
  const double delta = 1.0 / n;
  for (int k = 1; k <= 2; ++k) {
    const FESpace space(mhd::build_interval_mesh(n, 0, 1), k);
    const auto mass = mhd::build_mass_operators(space);
    const auto h = mhd::mesh_size_field(space, mass);
    // dense oracle: solve the consistent system directly
    const Eigen::MatrixXd M(mass.consistent);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.num_dofs());
    for (int c = 0; c < space.num_cells(); ++c) {
      for (int q = 0; q < space.basis().rule.size(); ++q) {
        for (int i = 0; i < space.dofs_per_cell(); ++i) {
          b[space.cell_dofs()(i, c)] += space.basis().rule.weights[q] * delta * space.basis().values(i, q) * 0.5 * delta / k;
        }
      }
    }
    const Eigen::VectorXd dense = M.ldlt().solve(b);
    CHECK((h - dense).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK((h.array() - 0.5 * delta / k).abs().maxCoeff() <= 1e-10 * delta);
  }
  const FESpace single(mhd::build_interval_mesh(1, 0, 3), 1);
  const auto h1 = mhd::mesh_size_field(single, mhd::build_mass_operators(single));
  CHECK((h1.array() - 1.5).abs().maxCoeff() <= 1e-13);

  const FESpace tri(mhd::build_triangulated_rectangle(6, 6, kUnitSquare), 1, {true, true});
  const auto ht = mhd::mesh_size_field(tri, mhd::build_mass_operators(tri));
  // right triangles with legs 1/6: circumradius = half the hypotenuse
  CHECK((ht.array() - std::sqrt(2.0) / 12).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("periodic identification") {
  const FESpace line(mhd::build_interval_mesh(10, 0, 1), 2, {true, false});
  CHECK(line.num_dofs() == 20);
  CHECK(line.cell_dofs()(0, 0) == line.cell_dofs()(1, line.num_cells() - 1));

  const FESpace sq(mhd::build_triangulated_rectangle(4, 4, kUnitSquare), 2, {true, true});
  auto f = [](const Eigen::Vector2d& x) {
    return std::sin(2 * std::numbers::pi * x.x()) + std::cos(2 * std::numbers::pi * x.y());
  };
  const auto field = mhd::interpolate(sq, f);
  // values seen from every cell agree with the periodic function at the physical node
  for (int c = 0; c < sq.num_cells(); ++c) {
    for (int i = 0; i < sq.dofs_per_cell(); ++i) {
      const Eigen::Vector2d x = sq.map_to_physical(c, sq.element().nodes().col(i));
      CHECK(field[sq.cell_dofs()(i, c)] == doctest::Approx(f(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Dirichlet constraints") {
  const FESpace line(mhd::build_interval_mesh(10, 0, 1), 1);
  mhd::Constraints cons(line);
  Eigen::RowVectorXd g(2);
  g << 4.0, -1.0;
  cons.add_dirichlet(mhd::kLeft, g);
  Eigen::MatrixXd field = Eigen::MatrixXd::Zero(line.num_dofs(), 2);
  field.col(0).setLinSpaced(0.0, 1.0);
  const Eigen::MatrixXd frozen_source = field;
  cons.add_dirichlet_frozen(mhd::kRight, frozen_source);
  field.setConstant(7.0);
  cons.apply(field);
  for (int dof : line.boundary_dofs(mhd::kLeft)) CHECK((field.row(dof) - g).norm() == 0.0);
  for (int dof : line.boundary_dofs(mhd::kRight)) CHECK((field.row(dof) - frozen_source.row(dof)).norm() == 0.0);
  CHECK(cons.dirichlet_dofs().size() == 2);
  cons.zero_rows(field);
  CHECK(field.row(line.boundary_dofs(mhd::kLeft)[0]).norm() == 0.0);

  CHECK_THROWS_AS(cons.add_dirichlet(mhd::kTop, g), mhd::UnknownBoundaryMarker);
  const FESpace periodic(mhd::build_interval_mesh(10, 0, 1), 1, {true, false});
  mhd::Constraints pc(periodic);
  CHECK_THROWS_AS(pc.add_dirichlet(mhd::kLeft, g), mhd::UnknownBoundaryMarker);

  const FESpace sq(mhd::build_triangulated_rectangle(3, 3, kUnitSquare), 2);
  CHECK(sq.boundary_dofs(mhd::kTop).size() == 7);
  CHECK(sq.boundary_dofs(mhd::kLeft).size() == 7);
}

TEST_CASE("PCG on a singular periodic Laplacian") {
  const FESpace sq(mhd::build_triangulated_rectangle(8, 8, kUnitSquare), 1, {true, true});
  const auto K = mhd::build_stiffness_matrix(sq);
  CHECK((K * Eigen::VectorXd::Ones(sq.num_dofs())).norm() <= 1e-12);
  Eigen::VectorXd b = Eigen::VectorXd::Random(sq.num_dofs());
  Eigen::VectorXd x;
  mhd::SolverOptions opts;
  opts.zero_mean = true;
  const auto stats = mhd::pcg_solve(K, b, x, opts);
  CHECK(stats.relative_residual <= 1e-12);
  CHECK(std::abs(x.mean()) <= 1e-12);
  b.array() -= b.mean();
  CHECK((K * x - b).norm() <= 1e-10 * b.norm());

  opts.max_iterations = 2;
  Eigen::VectorXd y;
  CHECK_THROWS_AS(mhd::pcg_solve(K, b, y, opts), mhd::SolverFailure);
}
