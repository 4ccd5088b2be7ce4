#include "fracpar/quaderror.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracpar/errors.hpp"

namespace fracpar {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> cpow(std::complex<double> z, double p) {
    return std::exp(p * std::log(z));
}

// g evaluated off the real axis (strip edges y +- i d)
std::complex<double> integrand_at(std::complex<double> z, double t, double lambda, double beta,
                                  const ContourSpec& spec) {
    const std::complex<double> ch = std::cosh(z), sh = std::sinh(z);
    const std::complex<double> gamma = spec.b * (ch + std::complex<double>(0, 1) * sh);
    const std::complex<double> gprime = spec.b * (sh + std::complex<double>(0, 1) * ch);
    return std::exp(-t * cpow(gamma, beta)) * gprime / (gamma - lambda);
}

// adaptive Simpson for the strip-edge modulus integral
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

std::complex<double> contour_integrand(double y, double t, double lambda, double beta,
                                       const ContourSpec& spec) {
    if (!(t > 0.0)) throw std::invalid_argument("contour_integrand: t must be > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
    const std::complex<double> gamma = contour_point(spec, y);
    if (std::abs(gamma - lambda) < 1e-14)
        throw std::domain_error("contour_integrand: lambda on the contour");
    return std::exp(-t * cpow(gamma, beta)) * contour_derivative(spec, y) / (gamma - lambda);
}

std::complex<double> sinc_sum(double lambda, double t, double beta, const ContourSpec& spec,
                              int N, double k) {
    std::complex<double> acc = contour_integrand(0.0, t, lambda, beta, spec);
    for (int j = 1; j <= N; ++j) {
        acc += contour_integrand(j * k, t, lambda, beta, spec);
        acc += contour_integrand(-j * k, t, lambda, beta, spec);
    }
    return -k * acc;   // orientation: enclose the spectrum counterclockwise
}

double quad_error(double lambda, double t, double beta, const ContourSpec& spec, int N, double k) {
    const std::complex<double> reference(0.0, 2.0 * kPi * std::exp(-t * std::pow(lambda, beta)));
    return std::abs(reference - sinc_sum(lambda, t, beta, spec, N, k));
}

SupSearchResult sup_search(double t, double beta, const ContourSpec& spec, int N, double k,
                           const SupSearchConfig& cfg) {
    if (!(cfg.mu > 1.0) || cfg.probes < 2)
        throw std::invalid_argument("sup_search: need mu > 1 and probes >= 2");
    const int NN = cfg.probes;
    std::vector<double> lambdas(NN + 1), vals(NN + 1);
    for (int j = 0; j <= NN; ++j) {
        lambdas[j] = cfg.lambda_floor * std::pow(cfg.mu, j);
        vals[j] = quad_error(lambdas[j], t, beta, spec, N, k);
    }
    int arg = 1;
    for (int j = 2; j <= NN; ++j)
        if (vals[j] > vals[arg]) arg = j;   // strict: ties keep the smaller lambda
    // step (i): the tail beyond the last probes must already be decreasing
    if (arg >= NN - 1 || vals[NN - 2] < vals[NN - 1] || vals[NN - 1] < vals[NN])
        throw InconclusiveSearchError("sup_search: |E| not decreasing at the probe tail; "
                                      "increase the probe count");
    SupSearchResult best{lambdas[arg], vals[arg]};
    for (int j = 0; j <= NN; ++j)
        if (vals[j] > best.sup_value) best = {lambdas[j], vals[j]};
    const double lo = lambdas[arg - 1], hi = lambdas[arg + 1];
    for (int l = 1; l <= NN; ++l) {
        const double rho = lo + (hi - lo) * l / NN;
        const double v = quad_error(rho, t, beta, spec, N, k);
        if (v > best.sup_value) best = {rho, v};
    }
    return best;
}

SupSearchConfig adequate_sup_config(double t, double beta) {
    SupSearchConfig cfg{};
    const double lambda_target = std::pow(40.0 / std::min(t, 40.0), 1.0 / beta);
    const int needed =
        static_cast<int>(std::ceil(std::log(std::max(lambda_target / cfg.lambda_floor, 1.0)) /
                                   std::log(cfg.mu))) + 10;
    cfg.probes = std::min(std::max(cfg.probes, needed), 400);
    return cfg;
}

double log_integral_bound(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_integral_bound: x must be > 0");
    return 1.0 + std::abs(std::log(-std::expm1(-x)));
}

double theoretical_bound(double t, double beta, const ContourSpec& spec, int N, double k) {
    spec.validate();
    const double kappa = decay_constant(spec, beta);
    const double Mt = 1.0 + log_integral_bound(kappa * t);

    // N(d,t): sup over the default probe grid of the strip-edge integral,
    // each integral truncated where exp(-t kappa cosh^beta) is negligible.
    const SupSearchConfig grid{};
    double Y = 60.0;
    const double target = 46.0 / (t * kappa);
    if (target > 1.0 && std::pow(target, 1.0 / beta) < std::cosh(60.0))
        Y = std::acosh(std::pow(target, 1.0 / beta)) + 2.0;
    double ndt = 0.0;
    for (int j = 0; j <= grid.probes; ++j) {
        const double lambda = grid.lambda_floor * std::pow(grid.mu, j);
        auto edge = [&](double y) {
            return std::abs(integrand_at({y, spec.d}, t, lambda, beta, spec)) +
                   std::abs(integrand_at({y, -spec.d}, t, lambda, beta, spec));
        };
        ndt = std::max(ndt, integrate(edge, -Y, Y, 1e-9));
    }

    const double arg1 = 2.0 * kPi * spec.d / k;
    const double term1 = arg1 > 700.0 ? ndt * std::exp(-arg1) : ndt / std::expm1(arg1);
    const double kn = k * N;
    const double growth = beta * kn > 700.0 ? std::numeric_limits<double>::infinity()
                                            : std::exp(beta * kn);
    const double expo = kappa * std::pow(2.0, -beta) * t * growth;
    const double term2 = std::isinf(expo) || expo > 745.0
                             ? 0.0
                             : Mt * (1.0 / std::tanh(kn)) * std::exp(-expo);
    return term1 + term2;
}

} // namespace fracpar
