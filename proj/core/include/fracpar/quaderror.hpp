#pragma once

#include <complex>

#include "fracpar/sincprop.hpp"

namespace fracpar {

/// Probe layout for approximating sup_{lambda >= 10} |E(lambda, t)|:
/// lambda_j = lambda_floor * mu^j for j = 0..probes, then one uniform
/// refinement pass around the arg max.
struct SupSearchConfig {
    double mu = 1.5;
    int probes = 40;
    double lambda_floor = 10.0;
};

/// Scalar contour integrand g_lambda(y, t) =
/// exp(-t gamma(y)^beta) (gamma(y) - lambda)^{-1} gamma'(y).
std::complex<double> contour_integrand(double y, double t, double lambda, double beta,
                                       const ContourSpec& spec);

/// Orientation-corrected truncated sinc sum; (1/2 pi i) sinc_sum converges to
/// exp(-t lambda^beta) (the ascending-y hyperbola parametrization itself winds
/// clockwise, hence the sign inside).
std::complex<double> sinc_sum(double lambda, double t, double beta, const ContourSpec& spec,
                              int N, double k);

/// |E(lambda, t)| = |2 pi i exp(-t lambda^beta) - sinc_sum|, using the analytic
/// residue value of the full integral as the reference.
double quad_error(double lambda, double t, double beta, const ContourSpec& spec, int N, double k);

struct SupSearchResult {
    double lambda_star = 0.0;
    double sup_value = 0.0;
};

/// Geometric probe sweep + single uniform refinement around the arg max.
/// Throws InconclusiveSearchError when the probe tail is not decreasing
/// (increase cfg.probes).
SupSearchResult sup_search(double t, double beta, const ContourSpec& spec, int N, double k,
                           const SupSearchConfig& cfg = {});

/// Probe layout whose range covers the decay region |E| ~ 1/lambda, which
/// starts only past t lambda^beta ~ 40; small t needs far more probes than
/// the t = 1/2 default.
SupSearchConfig adequate_sup_config(double t, double beta);

/// The quadrature-theorem bound with C = 1:
///   N(d,t)/(e^{2 pi d/k} - 1) + M(t) coth(kN) exp(-kappa 2^{-beta} t e^{kN beta}),
/// where N(d,t) is approximated by numerical integration of
/// |g_lambda(y+id)| + |g_lambda(y-id)| maximized over the default probe grid.
double theoretical_bound(double t, double beta, const ContourSpec& spec, int N, double k);

/// L(x) = 1 + |ln(1 - e^{-x})|, the bound for integrals of exp(-s cosh y).
double log_integral_bound(double x);

} // namespace fracpar
