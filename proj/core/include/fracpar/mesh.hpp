#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fracpar {

/// Simplicial mesh of the unit interval (dim 1) or unit square (dim 2).
///
/// Values are immutable after construction and safe to share across threads.
/// Interior degrees of freedom are numbered contiguously 0..n_interior()-1 in
/// node order; boundary nodes carry interior_index == -1.
struct Mesh {
    int dim = 1;
    std::vector<std::array<double, 2>> nodes;   // y == 0 in 1D
    std::vector<std::array<int, 3>> elems;      // elems[e][2] == -1 for interval elements
    std::vector<std::uint8_t> on_boundary;      // per node
    std::vector<int> interior_index;            // node -> dof, -1 on the boundary
    std::vector<int> interior_nodes;            // dof -> node
    double h_max = 0.0;
    /// Cells per side for the built-in generators (m_interior+1 in 1D, n in 2D);
    /// 0 for imported meshes. Structured-only fast paths check this.
    int cells_per_side = 0;

    int n_nodes() const { return static_cast<int>(nodes.size()); }
    int n_elems() const { return static_cast<int>(elems.size()); }
    int n_interior() const { return static_cast<int>(interior_nodes.size()); }
    int nodes_per_elem() const { return dim + 1; }
};

/// Uniform mesh of (0,1) with m_interior interior nodes, h = 1/(m_interior+1).
Mesh build_interval_mesh(int m_interior);

/// Structured triangulation of (0,1)^2: n x n squares, each split along the
/// SW-NE diagonal into two congruent right triangles.
Mesh build_square_mesh(int n_per_side);

/// Plain-text import. Line 1: "dim n_nodes n_elements"; then node coordinate
/// lines; then 0-based element index lines. Boundary nodes are inferred by
/// coordinate tolerance 1e-12 on the boundary of (0,1)^dim.
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);

double element_measure(const Mesh& mesh, int e);   // length (1D) or area (2D)
double element_diameter(const Mesh& mesh, int e);
double element_inradius(const Mesh& mesh, int e);  // half-length in 1D

/// Spacing of a uniform 1D mesh, or -1 if the mesh is not uniform to 1e-12.
double uniform_interval_spacing(const Mesh& mesh);

} // namespace fracpar
