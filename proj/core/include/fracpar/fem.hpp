#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <utility>

#include "fracpar/mesh.hpp"

namespace fracpar {

using SpMat = Eigen::SparseMatrix<double>;
using ScalarField = std::function<double(double, double)>;

/// Stiffness/mass pair over the interior dofs of a mesh. Both matrices are
/// exactly symmetric and positive definite after Dirichlet elimination.
struct SparsePencil {
    int n = 0;
    SpMat A;   // P1 Galerkin stiffness of the Dirichlet form
    SpMat M;   // consistent P1 mass
};

/// Exact P1 matrices for -div(c grad u) with homogeneous Dirichlet conditions,
/// boundary rows/columns eliminated. The coefficient is sampled per element at
/// the centroid; omit it for the Laplacian.
SparsePencil assemble(const Mesh& mesh);
SparsePencil assemble(const Mesh& mesh, const ScalarField& diffusion_coeff);

/// Full-node matrices with no boundary treatment (property checks: stiffness
/// row sums vanish, mass entries sum to |Omega|).
std::pair<SpMat, SpMat> assemble_full(const Mesh& mesh);

/// Load vector b_i = int f phi_i over interior basis functions.
/// Per-element Gauss quadrature of degree >= 5.
Eigen::VectorXd load_vector(const Mesh& mesh, const ScalarField& f);

/// L^2 projection: solves M c = load_vector(f).
Eigen::VectorXd l2_project(const Mesh& mesh, const SparsePencil& pencil, const ScalarField& f);

/// Nodal interpolant at interior nodes.
Eigen::VectorXd interpolate(const Mesh& mesh, const ScalarField& f);

/// sqrt(c^T M c), the L^2 norm of the FE function with coefficients c.
double l2_norm(const SparsePencil& pencil, const Eigen::VectorXd& c);
double l2_norm(const SparsePencil& pencil, const Eigen::VectorXcd& c);

/// || u_h - f ||_{L^2} by per-element Gauss quadrature of degree >= 5.
double l2_error(const Mesh& mesh, const Eigen::VectorXd& c, const ScalarField& f);

} // namespace fracpar
