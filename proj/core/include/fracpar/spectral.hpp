#pragma once

#include <Eigen/Core>
#include <functional>

#include "fracpar/fem.hpp"

namespace fracpar {

/// Generalized eigenpairs of the pencil (A, M): A psi = lambda M psi with
/// Psi^T M Psi = I, eigenvalues ascending, sign fixed so the first nonzero
/// component of each eigenvector is positive.
struct EigenBasis {
    Eigen::VectorXd lambdas;
    Eigen::MatrixXd vectors;   // columns
};

/// Dense generalized eigensolve. Guarded at n <= 5000; larger problems should
/// use the sinc propagator path instead (SizeLimitError says so).
EigenBasis eigendecompose(const SparsePencil& pencil);

/// Exact discrete propagator: sum_j exp(-t lambda_j^beta) (v, psi_j)_M psi_j.
Eigen::VectorXd propagate_spectral(const EigenBasis& basis, const SparsePencil& pencil,
                                   const Eigen::VectorXd& v, double t, double beta);

/// Duhamel operator for a time-constant source: weights
/// lambda^{-beta} (1 - exp(-t lambda^beta)).
Eigen::VectorXd duhamel_spectral(const EigenBasis& basis, const SparsePencil& pencil,
                                 const Eigen::VectorXd& f, double t, double beta);

/// Closed-form 1D fast paths on uniform interval meshes via the discrete sine
/// transform. Input is the load vector Vbar_j = (v, phi_j); output is the
/// nodal coefficient vector of exp(-t L_h^beta) pi_h v.
Eigen::VectorXd dst_propagate_1d(const Mesh& mesh, const Eigen::VectorXd& load,
                                 double t, double beta);
Eigen::VectorXd dst_duhamel_1d(const Mesh& mesh, const Eigen::VectorXd& load,
                               double t, double beta);
/// Generic weighted version: nodal coefficients of sum_j w(lambda_{j,h}) (..)
Eigen::VectorXd dst_apply_weight_1d(const Mesh& mesh, const Eigen::VectorXd& load,
                                    const std::function<double(double)>& weight);

/// Closed-form discrete eigenvalues of the uniform 1D P1 pencil.
double interval_pencil_eigenvalue(int m_interior, int j);

// --- continuous (truncated Fourier) reference solutions ---

enum class InitialData {
    Hat1D,          // 2x on [0,1/2], 2-2x on [1/2,1]
    HatForcing1D,   // same profile used as a time-constant source, zero initial data
    Checkerboard2D, // 1 where (x-1/2)(y-1/2) > 0, else 0
};

struct ContinuousSpectrum {
    int dim = 1;
    int modes = 50000;   // per direction
};

/// Pointwise evaluator of the truncated eigenfunction series for u(t).
std::function<double(double, double)> continuous_solution(const ContinuousSpectrum& spectrum,
                                                          InitialData data, double t, double beta);

/// Fourier sine coefficients (v, sqrt(2) sin(j pi x)) of the 1D hat datum.
Eigen::VectorXd hat_sine_coefficients(int modes);

/// Coefficients (v, 2 sin(j pi x) sin(k pi y)) of the checkerboard datum.
Eigen::MatrixXd checkerboard_sine_coefficients(int modes);

/// Exact load vector (v, phi_i) for the built-in data on a given mesh
/// (kinks and jump lines are split exactly; no quadrature error).
Eigen::VectorXd initial_data_load_vector(const Mesh& mesh, InitialData data);

/// Values at the interior nodes of the uniform 1D mesh of the sine series
/// sum_j coeffs[j-1] sin(j pi x); mode count may exceed the node count
/// (periodic folding, exact).
Eigen::VectorXd sine_series_at_nodes_1d(int m_interior, const Eigen::VectorXd& coeffs);

/// || u_T - w_h ||_{L^2} where u_T = sum_{jk} series(j,k) 2 sin(j pi x) sin(k pi y)
/// and w_h lives on a built-in square mesh. Exact up to roundoff: the inner
/// products (sin sin, hat) use the closed form of the P1 hat transform.
double l2_error_vs_sine_series_2d(const Mesh& mesh, const SparsePencil& pencil,
                                  const Eigen::VectorXd& w, const Eigen::MatrixXd& series);

} // namespace fracpar
