#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhd/simulation.hpp"

namespace mhdcli {

/// Nodal CSV: coordinates, primitive fields and the viscosity of the last step.
/// Columns x,rho,u_x,u_y,p,B_x,B_y,eps in 1D and x,y,... in 2D.
void write_snapshot_csv(std::ostream& os, const mhd::Simulation& sim);

/// Legacy ASCII VTK unstructured grid. Every cell is written with its own copy
/// of its Lagrange nodes (so periodic seams are not bridged) and split into
/// k^2 linear sub-triangles; point data are the primitive fields and eps.
void write_snapshot_vtk(std::ostream& os, const mhd::Simulation& sim);

/// Writes snapshot_<index>.csv (and .vtk in 2D when enabled) into `dir`.
void write_snapshot(const std::filesystem::path& dir, const mhd::Simulation& sim, int index,
                    bool vtk);

/// Every monitor index at which a solution snapshot is written: 0, then
/// `count` evenly spaced indices ending at `samples`.
std::vector<int> snapshot_indices(int samples, int count);

}  // namespace mhdcli
