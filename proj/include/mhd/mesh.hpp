#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mhd {

/// Axis-aligned domain. For 1D meshes only the x-range is meaningful.
struct Box {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Boundary sides of a box domain.
enum BoundaryMarker : int { kLeft = 1, kRight = 2, kBottom = 3, kTop = 4 };

struct BoundaryFacet {
  Eigen::Vector2i vertices;  ///< in 1D both entries hold the end vertex
  int marker;
};

enum class TrianglePattern { Right, Crossed };

/// Conforming simplicial mesh of an interval (1D) or a rectangle (2D).
/// Vertex coordinates are stored as 2 x N (y = 0 in 1D); cells are stored
/// column-wise with 2 (interval) or 3 (triangle, counter-clockwise) vertices.
class Mesh {
 public:
  Mesh(int dim, Box bounds, Eigen::Matrix2Xd vertices, Eigen::MatrixXi cells,
       std::vector<BoundaryFacet> facets);

  int dim() const { return dim_; }
  const Box& bounds() const { return bounds_; }
  const Eigen::Matrix2Xd& vertices() const { return vertices_; }
  const Eigen::MatrixXi& cells() const { return cells_; }
  const std::vector<BoundaryFacet>& boundary_facets() const { return facets_; }

  int num_vertices() const { return static_cast<int>(vertices_.cols()); }
  int num_cells() const { return static_cast<int>(cells_.cols()); }
  int vertices_per_cell() const { return static_cast<int>(cells_.rows()); }

  /// Length (1D) or area (2D) of a cell.
  double cell_measure(int cell) const;
  /// Circumradius: half the length of an interval, R = abc / (4 |K|) for triangles.
  double circumradius(int cell) const;
  /// Shortest edge over the whole mesh.
  double min_edge_length() const;
  /// Sum of cell measures.
  double measure() const;

  bool has_marker(int marker) const;

 private:
  int dim_;
  Box bounds_;
  Eigen::Matrix2Xd vertices_;
  Eigen::MatrixXi cells_;
  std::vector<BoundaryFacet> facets_;
};

Mesh build_interval_mesh(int n_cells, double x_min, double x_max);

/// Structured triangulation of a rectangle into nx x ny squares, split by one
/// diagonal (Right: 2 triangles per square) or both (Crossed: 4 triangles with
/// a center vertex).
Mesh build_triangulated_rectangle(int nx, int ny, const Box& bounds,
                                  TrianglePattern pattern = TrianglePattern::Right);

}  // namespace mhd
