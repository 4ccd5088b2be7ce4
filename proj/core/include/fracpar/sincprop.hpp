#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>

#include "fracpar/fem.hpp"

namespace fracpar {

/// Hyperbolic integration contour gamma(y) = b (cosh y + i sinh y).
///
/// The contour separates the pencil spectrum from the imaginary axis whenever
/// 0 < b < lambda_1/sqrt(2); lambda1_lower is a user-supplied lower bound for
/// the smallest exact eigenvalue (pi^2 on the unit interval, 2 pi^2 on the
/// unit square).
struct ContourSpec {
    double b = 1.0;
    double d = 0.39269908169872414;   // pi/8, strip half-width for the sinc analysis
    double lambda1_lower = 9.869604401089358;

    void validate() const;

    /// b = min(1, lambda1_lower/(2 sqrt 2)), d = pi/8.
    static ContourSpec with_lambda1(double lambda1_lower);
    static ContourSpec unit_interval();   // lambda1 = pi^2
    static ContourSpec unit_square();     // lambda1 = 2 pi^2
};

enum class SpacingPolicy { LogN, Balanced };

/// Sinc rule with 2N+1 nodes y_j = j k, j = -N..N.
struct SincRule {
    int N = 0;
    double k = 0.0;
    SpacingPolicy policy = SpacingPolicy::LogN;
};

std::complex<double> contour_point(const ContourSpec& spec, double y);
std::complex<double> contour_derivative(const ContourSpec& spec, double y);

/// kappa = cos(beta(pi/4+d)) (sqrt(2) b sin(pi/4-d))^beta, the decay rate of
/// |exp(-t gamma(z)^beta)| along the strip.
double decay_constant(const ContourSpec& spec, double beta);

/// Node spacing. LogN: k = ln(N)/(beta N). Balanced (needs t): the unique
/// positive root of k exp(beta N k) = 2^{1+beta} pi d / (kappa t), solved to
/// 1e-12 relative residual.
double select_spacing(int N, double beta, SpacingPolicy policy, const ContourSpec& spec,
                      std::optional<double> t = std::nullopt);

SincRule make_rule(int N, double beta, SpacingPolicy policy, const ContourSpec& spec,
                   std::optional<double> t = std::nullopt);

struct PropagatorResult {
    Eigen::VectorXd values;
    /// max |imaginary part| of the assembled complex sum, before taking the
    /// real part; conjugate-pair symmetry keeps it at roundoff level.
    double imag_residue = 0.0;
};

/// Sinc-quadrature propagator exp(-t L_h^beta) pi_h v for real nodal data v.
/// Only the j = 0..N shifted systems are solved; the mirror nodes follow from
/// conjugate symmetry. Deterministic for any n_threads (fixed-order reduction).
PropagatorResult apply_propagator(const SparsePencil& pencil, const Eigen::VectorXd& v,
                                  double t, double beta, const SincRule& rule,
                                  const ContourSpec& spec, int n_threads = 1);

/// Duhamel operator for a time-constant source f, i.e. the weights
/// lambda^{-beta}(1 - exp(-t lambda^beta)). Realized as the fractional
/// inverse (real-axis Balakrishnan rule, 2N+1 real shifts) minus the
/// exp-weighted hyperbola quadrature with gamma^{-beta} exp(-t gamma^beta);
/// the naive single-weight form decays too slowly along the contour.
PropagatorResult apply_duhamel(const SparsePencil& pencil, const Eigen::VectorXd& f,
                               double t, double beta, const SincRule& rule,
                               const ContourSpec& spec, int n_threads = 1);

} // namespace fracpar
