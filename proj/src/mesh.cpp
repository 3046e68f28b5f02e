#include "mhd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhd/errors.hpp"

namespace mhd {

Mesh::Mesh(int dim, Box bounds, Eigen::Matrix2Xd vertices, Eigen::MatrixXi cells,
           std::vector<BoundaryFacet> facets)
    : dim_(dim),
      bounds_(bounds),
      vertices_(std::move(vertices)),
      cells_(std::move(cells)),
      facets_(std::move(facets)) {
  if (dim_ != 1 && dim_ != 2) throw InvalidDomain("mesh dimension must be 1 or 2");
  if (cells_.rows() != dim_ + 1) throw InvalidDomain("cell connectivity does not match dimension");
  for (int c = 0; c < num_cells(); ++c) {
    if (!(cell_measure(c) > 0.0)) throw InvalidDomain("mesh has a cell with nonpositive measure");
  }
}

double Mesh::cell_measure(int cell) const {
  const Eigen::Vector2d a = vertices_.col(cells_(0, cell));
  const Eigen::Vector2d b = vertices_.col(cells_(1, cell));
  if (dim_ == 1) return b.x() - a.x();
  const Eigen::Vector2d c = vertices_.col(cells_(2, cell));
  const Eigen::Vector2d ab = b - a;
  const Eigen::Vector2d ac = c - a;
  return 0.5 * (ab.x() * ac.y() - ab.y() * ac.x());
}

double Mesh::circumradius(int cell) const {
  if (dim_ == 1) return 0.5 * cell_measure(cell);
  const Eigen::Vector2d a = vertices_.col(cells_(0, cell));
  const Eigen::Vector2d b = vertices_.col(cells_(1, cell));
  const Eigen::Vector2d c = vertices_.col(cells_(2, cell));
  return (b - a).norm() * (c - b).norm() * (a - c).norm() / (4.0 * cell_measure(cell));
}

double Mesh::min_edge_length() const {
  double best = std::numeric_limits<double>::max();
  const int nv = vertices_per_cell();
  for (int c = 0; c < num_cells(); ++c) {
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) {
        best = std::min(best, (vertices_.col(cells_(i, c)) - vertices_.col(cells_(j, c))).norm());
      }
    }
  }
  return best;
}

double Mesh::measure() const {
  double total = 0.0;
  for (int c = 0; c < num_cells(); ++c) total += cell_measure(c);
  return total;
}

bool Mesh::has_marker(int marker) const {
  return std::any_of(facets_.begin(), facets_.end(),
                     [marker](const BoundaryFacet& f) { return f.marker == marker; });
}

Mesh build_interval_mesh(int n_cells, double x_min, double x_max) {
  if (n_cells < 1 || !(x_max > x_min)) throw InvalidDomain("interval mesh needs n >= 1 and x_max > x_min");
  Eigen::Matrix2Xd vertices = Eigen::Matrix2Xd::Zero(2, n_cells + 1);
  const double dx = (x_max - x_min) / n_cells;
  for (int i = 0; i <= n_cells; ++i) vertices(0, i) = x_min + i * dx;
  vertices(0, n_cells) = x_max;
  Eigen::MatrixXi cells(2, n_cells);
  for (int i = 0; i < n_cells; ++i) cells.col(i) << i, i + 1;
  std::vector<BoundaryFacet> facets{{Eigen::Vector2i(0, 0), kLeft},
                                    {Eigen::Vector2i(n_cells, n_cells), kRight}};
  return Mesh(1, Box{x_min, x_max, 0.0, 0.0}, std::move(vertices), std::move(cells),
              std::move(facets));
}

Mesh build_triangulated_rectangle(int nx, int ny, const Box& bounds, TrianglePattern pattern) {
  if (nx < 1 || ny < 1 || !(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min)) {
    throw InvalidDomain("rectangle mesh needs nx, ny >= 1 and a nonempty box");
  }
  const double dx = (bounds.x_max - bounds.x_min) / nx;
  const double dy = (bounds.y_max - bounds.y_min) / ny;
  const int n_grid = (nx + 1) * (ny + 1);
  const int n_centers = pattern == TrianglePattern::Crossed ? nx * ny : 0;
  Eigen::Matrix2Xd vertices(2, n_grid + n_centers);
  auto grid = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      vertices(0, grid(i, j)) = i == nx ? bounds.x_max : bounds.x_min + i * dx;
      vertices(1, grid(i, j)) = j == ny ? bounds.y_max : bounds.y_min + j * dy;
    }
  }

  const int per_square = pattern == TrianglePattern::Crossed ? 4 : 2;
  Eigen::MatrixXi cells(3, per_square * nx * ny);
  int c = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = grid(i, j), v10 = grid(i + 1, j), v01 = grid(i, j + 1), v11 = grid(i + 1, j + 1);
      if (pattern == TrianglePattern::Right) {
        cells.col(c++) << v00, v10, v11;
        cells.col(c++) << v00, v11, v01;
      } else {
        const int center = n_grid + j * nx + i;
        vertices(0, center) = bounds.x_min + (i + 0.5) * dx;
        vertices(1, center) = bounds.y_min + (j + 0.5) * dy;
        cells.col(c++) << v00, v10, center;
        cells.col(c++) << v10, v11, center;
        cells.col(c++) << v11, v01, center;
        cells.col(c++) << v01, v00, center;
      }
    }
  }

  std::vector<BoundaryFacet> facets;
  for (int i = 0; i < nx; ++i) {
    facets.push_back({Eigen::Vector2i(grid(i, 0), grid(i + 1, 0)), kBottom});
    facets.push_back({Eigen::Vector2i(grid(i, ny), grid(i + 1, ny)), kTop});
  }
  for (int j = 0; j < ny; ++j) {
    facets.push_back({Eigen::Vector2i(grid(0, j), grid(0, j + 1)), kLeft});
    facets.push_back({Eigen::Vector2i(grid(nx, j), grid(nx, j + 1)), kRight});
  }
  return Mesh(2, bounds, std::move(vertices), std::move(cells), std::move(facets));
}

}  // namespace mhd
