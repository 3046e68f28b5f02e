#include "output.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mhd/diagnostics.hpp"
#include "mhd/errors.hpp"
#include "run_config.hpp"

namespace mhdcli {

namespace {

const std::array<const char*, 6> kFieldNames = {"rho", "u_x", "u_y", "p", "B_x", "B_y"};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw mhd::Error("cannot write " + path.string());
  return out;
}

/// Local node index of every lattice point (i, j), i + j <= k, of the reference triangle.
std::vector<std::vector<int>> lattice_to_local(const mhd::LagrangeElement& element) {
  const int k = element.degree();
  std::vector<std::vector<int>> index(k + 1, std::vector<int>(k + 1, -1));
  for (int n = 0; n < element.num_basis(); ++n) {
    const int i = static_cast<int>(std::lround(element.nodes()(0, n) * k));
    const int j = static_cast<int>(std::lround(element.nodes()(1, n) * k));
    index[i][j] = n;
  }
  return index;
}

}  // namespace

void write_snapshot_csv(std::ostream& os, const mhd::Simulation& sim) {
  const mhd::FESpace& space = sim.space();
  const auto P = mhd::primitive_fields(sim.state(), sim.problem().gas);
  const bool two_d = space.dim() == 2;
  os << (two_d ? "x,y" : "x");
  for (const char* name : kFieldNames) os << ',' << name;
  os << ",eps\n";
  for (int i = 0; i < space.num_dofs(); ++i) {
    os << format_number(space.dof_coordinates()(0, i));
    if (two_d) os << ',' << format_number(space.dof_coordinates()(1, i));
    for (int f = 0; f < 6; ++f) os << ',' << format_number(P(i, f));
    os << ',' << format_number(sim.viscosity()[i]) << '\n';
  }
}

void write_snapshot_vtk(std::ostream& os, const mhd::Simulation& sim) {
  const mhd::FESpace& space = sim.space();
  if (space.dim() != 2) throw mhd::Error("VTK output is only written for 2D runs");
  const auto P = mhd::primitive_fields(sim.state(), sim.problem().gas);
  const mhd::LagrangeElement& element = space.element();
  const int k = element.degree();
  const int nb = element.num_basis();
  const auto lattice = lattice_to_local(element);

  std::vector<std::array<int, 3>> sub;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; i + j < k; ++j) {
      sub.push_back({lattice[i][j], lattice[i + 1][j], lattice[i][j + 1]});
      if (i + j < k - 1) sub.push_back({lattice[i + 1][j], lattice[i + 1][j + 1], lattice[i][j + 1]});
    }
  }

  const int cells = space.num_cells();
  const int points = cells * nb;
  os << "# vtk DataFile Version 3.0\n";
  os << sim.problem().id << " t=" << std::setprecision(17) << sim.time() << "\n";
  os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << points << " double\n";
  for (int c = 0; c < cells; ++c) {
    for (int n = 0; n < nb; ++n) {
      const Eigen::Vector2d x = space.map_to_physical(c, element.nodes().col(n));
      os << x[0] << ' ' << x[1] << " 0\n";
    }
  }
  const std::size_t triangles = static_cast<std::size_t>(cells) * sub.size();
  os << "CELLS " << triangles << ' ' << 4 * triangles << '\n';
  for (int c = 0; c < cells; ++c) {
    for (const auto& t : sub) {
      os << "3 " << c * nb + t[0] << ' ' << c * nb + t[1] << ' ' << c * nb + t[2] << '\n';
    }
  }
  os << "CELL_TYPES " << triangles << '\n';
  for (std::size_t t = 0; t < triangles; ++t) os << "5\n";

  os << "POINT_DATA " << points << '\n';
  const auto scalar = [&](const std::string& name, const auto& value_of_dof) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < cells; ++c) {
      for (int n = 0; n < nb; ++n) os << value_of_dof(space.cell_dofs()(n, c)) << '\n';
    }
  };
  scalar("rho", [&](int d) { return P(d, 0); });
  scalar("p", [&](int d) { return P(d, 3); });
  scalar("eps", [&](int d) { return sim.viscosity()[d]; });
  scalar("B_magnitude", [&](int d) { return std::hypot(P(d, 4), P(d, 5)); });
  const auto vector = [&](const std::string& name, int col) {
    os << "VECTORS " << name << " double\n";
    for (int c = 0; c < cells; ++c) {
      for (int n = 0; n < nb; ++n) {
        const int d = space.cell_dofs()(n, c);
        os << P(d, col) << ' ' << P(d, col + 1) << " 0\n";
      }
    }
  };
  vector("velocity", 1);
  vector("B", 4);
}

void write_snapshot(const std::filesystem::path& dir, const mhd::Simulation& sim, int index,
                    bool vtk) {
  std::ostringstream stem;
  stem << "snapshot_" << std::setw(4) << std::setfill('0') << index;
  {
    auto out = open_output(dir / (stem.str() + ".csv"));
    write_snapshot_csv(out, sim);
  }
  if (vtk && sim.space().dim() == 2) {
    auto out = open_output(dir / (stem.str() + ".vtk"));
    write_snapshot_vtk(out, sim);
  }
}

std::vector<int> snapshot_indices(int samples, int count) {
  std::vector<int> indices{0};
  if (count <= 0) return indices;
  for (int j = 1; j <= count; ++j) {
    const int index = static_cast<int>((static_cast<long long>(j) * samples + count - 1) / count);
    if (index > indices.back()) indices.push_back(index);
  }
  return indices;
}

}  // namespace mhdcli
