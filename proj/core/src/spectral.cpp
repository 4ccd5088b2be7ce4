#include "fracpar/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracpar/errors.hpp"

namespace fracpar {

namespace {

constexpr double kPi = std::numbers::pi;

void check_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("beta must lie in (0,1)");
}

// sin(u)/u with the removable singularity filled in.
double sinc(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

// Table of sin(pi q / P) for q in [0, 2P); sin(j p pi / P) = table[(j p) mod 2P].
std::vector<double> sine_table(int P) {
    std::vector<double> tab(2 * P);
    for (int q = 0; q < 2 * P; ++q) tab[q] = std::sin(kPi * q / P);
    return tab;
}

// out_p = sum_j in_j sin(j p pi / P), p = 1..m, via the periodic table and an
// incremental index (no divisions in the inner loop).
Eigen::VectorXd raw_sine_transform(const Eigen::VectorXd& in, int P,
                                   const std::vector<double>& tab) {
    const int m = P - 1;
    Eigen::VectorXd out(m);
    for (int p = 1; p <= m; ++p) {
        double acc = 0.0;
        int idx = 0;
        for (int j = 1; j <= static_cast<int>(in.size()); ++j) {
            idx += p;
            if (idx >= 2 * P) idx -= 2 * P;
            acc += in[j - 1] * tab[idx];
        }
        out[p - 1] = acc;
    }
    return out;
}

double require_uniform_1d(const Mesh& mesh) {
    const double h = uniform_interval_spacing(mesh);
    if (h <= 0.0)
        throw std::invalid_argument("dst path requires a uniform 1D mesh");
    return h;
}

// Clip a convex polygon against an axis-aligned half plane.
using Poly = std::vector<std::array<double, 2>>;
Poly clip_halfplane(const Poly& poly, int axis, double val, bool keep_ge) {
    Poly out;
    const int m = static_cast<int>(poly.size());
    for (int i = 0; i < m; ++i) {
        const auto& P = poly[i];
        const auto& Q = poly[(i + 1) % m];
        const bool pin = keep_ge ? P[axis] >= val : P[axis] <= val;
        const bool qin = keep_ge ? Q[axis] >= val : Q[axis] <= val;
        if (pin) out.push_back(P);
        if (pin != qin) {
            const double s = (val - P[axis]) / (Q[axis] - P[axis]);
            out.push_back({P[0] + s * (Q[0] - P[0]), P[1] + s * (Q[1] - P[1])});
        }
    }
    return out;
}

} // namespace

EigenBasis eigendecompose(const SparsePencil& pencil) {
    if (pencil.n > 5000)
        throw SizeLimitError("eigendecompose: dense eigensolve guarded at n <= 5000; "
                             "use the sinc propagator for larger problems");
    Eigen::MatrixXd A = Eigen::MatrixXd(pencil.A);
    Eigen::MatrixXd M = Eigen::MatrixXd(pencil.M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, M);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: generalized eigensolve failed");
    EigenBasis basis;
    basis.lambdas = solver.eigenvalues();
    basis.vectors = solver.eigenvectors();
    for (int j = 0; j < basis.vectors.cols(); ++j) {
        const double lead = basis.vectors.col(j).cwiseAbs().maxCoeff();
        for (int i = 0; i < basis.vectors.rows(); ++i) {
            if (std::abs(basis.vectors(i, j)) > 1e-12 * lead) {
                if (basis.vectors(i, j) < 0.0) basis.vectors.col(j) = -basis.vectors.col(j);
                break;
            }
        }
    }
    return basis;
}

static Eigen::VectorXd spectral_apply(const EigenBasis& basis, const SparsePencil& pencil,
                                      const Eigen::VectorXd& v,
                                      const std::function<double(double)>& weight) {
    if (v.size() != pencil.n || basis.vectors.rows() != pencil.n)
        throw std::invalid_argument("spectral apply: dimension mismatch");
    Eigen::VectorXd modal = basis.vectors.transpose() * (pencil.M * v);
    for (int j = 0; j < modal.size(); ++j) modal[j] *= weight(basis.lambdas[j]);
    return basis.vectors * modal;
}

Eigen::VectorXd propagate_spectral(const EigenBasis& basis, const SparsePencil& pencil,
                                   const Eigen::VectorXd& v, double t, double beta) {
    check_beta(beta);
    if (t < 0.0) throw std::invalid_argument("propagate_spectral: t must be >= 0");
    return spectral_apply(basis, pencil, v,
                          [=](double lam) { return std::exp(-t * std::pow(lam, beta)); });
}

Eigen::VectorXd duhamel_spectral(const EigenBasis& basis, const SparsePencil& pencil,
                                 const Eigen::VectorXd& f, double t, double beta) {
    check_beta(beta);
    if (!(t > 0.0)) throw std::invalid_argument("duhamel_spectral: t must be > 0");
    return spectral_apply(basis, pencil, f, [=](double lam) {
        const double lb = std::pow(lam, beta);
        return (1.0 - std::exp(-t * lb)) / lb;
    });
}

double interval_pencil_eigenvalue(int m_interior, int j) {
    const double h = 1.0 / (m_interior + 1);
    const double c = std::cos(j * kPi * h);
    return 6.0 / (h * h) * (1.0 - c) / (2.0 + c);
}

Eigen::VectorXd dst_apply_weight_1d(const Mesh& mesh, const Eigen::VectorXd& load,
                                    const std::function<double(double)>& weight) {
    const double h = require_uniform_1d(mesh);
    const int m = mesh.n_interior();
    if (load.size() != m) throw std::invalid_argument("dst: load dimension mismatch");
    const int P = m + 1;
    const auto tab = sine_table(P);
    // S = sqrt(2h) sin(jk pi h) diagonalizes the pencil; S^{-1} = S.
    Eigen::VectorXd modal = raw_sine_transform(load, P, tab) * std::sqrt(2.0 * h);
    for (int j = 1; j <= m; ++j) {
        const double lam = interval_pencil_eigenvalue(m, j);
        const double mass_eig = h * (2.0 + std::cos(j * kPi * h)) / 3.0;
        modal[j - 1] *= weight(lam) / mass_eig;
    }
    return raw_sine_transform(modal, P, tab) * std::sqrt(2.0 * h);
}

Eigen::VectorXd dst_propagate_1d(const Mesh& mesh, const Eigen::VectorXd& load,
                                 double t, double beta) {
    check_beta(beta);
    if (t < 0.0) throw std::invalid_argument("dst_propagate_1d: t must be >= 0");
    return dst_apply_weight_1d(mesh, load, [=](double lam) { return std::exp(-t * std::pow(lam, beta)); });
}

Eigen::VectorXd dst_duhamel_1d(const Mesh& mesh, const Eigen::VectorXd& load,
                               double t, double beta) {
    check_beta(beta);
    if (!(t > 0.0)) throw std::invalid_argument("dst_duhamel_1d: t must be > 0");
    return dst_apply_weight_1d(mesh, load, [=](double lam) {
        const double lb = std::pow(lam, beta);
        return (1.0 - std::exp(-t * lb)) / lb;
    });
}

Eigen::VectorXd hat_sine_coefficients(int modes) {
    Eigen::VectorXd c(modes);
    for (int j = 1; j <= modes; ++j) {
        // (v, sqrt(2) sin(j pi x)) = 4 sqrt(2) sin(j pi / 2) / (j pi)^2; even modes vanish
        const double s = (j % 2 == 0) ? 0.0 : ((j % 4 == 1) ? 1.0 : -1.0);
        c[j - 1] = 4.0 * std::sqrt(2.0) * s / ((j * kPi) * (j * kPi));
    }
    return c;
}

Eigen::MatrixXd checkerboard_sine_coefficients(int modes) {
    // 1D pieces: a_j = int_0^{1/2} sin(j pi x), b_j = int_{1/2}^1 sin(j pi x)
    Eigen::VectorXd a(modes), b(modes);
    for (int j = 1; j <= modes; ++j) {
        const double cj2 = std::cos(j * kPi / 2.0);
        const double cj = (j % 2 == 0) ? 1.0 : -1.0;
        a[j - 1] = (1.0 - cj2) / (j * kPi);
        b[j - 1] = (cj2 - cj) / (j * kPi);
    }
    return 2.0 * (b * b.transpose() + a * a.transpose());
}

std::function<double(double, double)> continuous_solution(const ContinuousSpectrum& spectrum,
                                                          InitialData data, double t, double beta) {
    check_beta(beta);
    if (t < 0.0) throw std::invalid_argument("continuous_solution: t must be >= 0");
    const int J = spectrum.modes;
    if (data == InitialData::Hat1D || data == InitialData::HatForcing1D) {
        const bool duhamel = data == InitialData::HatForcing1D;
        if (duhamel && !(t > 0.0))
            throw std::invalid_argument("continuous_solution: Duhamel data needs t > 0");
        Eigen::VectorXd coeff = hat_sine_coefficients(J) * std::sqrt(2.0);
        for (int j = 1; j <= J; ++j) {
            const double lb = std::pow(j * kPi, 2.0 * beta);
            coeff[j - 1] *= duhamel ? (1.0 - std::exp(-t * lb)) / lb : std::exp(-t * lb);
        }
        return [coeff, J](double x, double) {
            double acc = 0.0;
            for (int j = 1; j <= J; j += 2) acc += coeff[j - 1] * std::sin(j * kPi * x);
            return acc;
        };
    }
    if (spectrum.dim != 2)
        throw std::invalid_argument("continuous_solution: checkerboard data is two-dimensional");
    Eigen::MatrixXd series = checkerboard_sine_coefficients(J);
    for (int j = 1; j <= J; ++j)
        for (int k = 1; k <= J; ++k) {
            const double lam = (static_cast<double>(j) * j + static_cast<double>(k) * k) * kPi * kPi;
            series(j - 1, k - 1) *= std::exp(-t * std::pow(lam, beta));
        }
    return [series, J](double x, double y) {
        double acc = 0.0;
        for (int j = 1; j <= J; ++j) {
            if (series.row(j - 1).cwiseAbs().maxCoeff() == 0.0) continue;
            const double sx = std::sin(j * kPi * x);
            for (int k = 1; k <= J; ++k) acc += series(j - 1, k - 1) * 2.0 * sx * std::sin(k * kPi * y);
        }
        return acc;
    };
}

Eigen::VectorXd initial_data_load_vector(const Mesh& mesh, InitialData data) {
    if (data == InitialData::Hat1D || data == InitialData::HatForcing1D) {
        if (mesh.dim != 1) throw std::invalid_argument("hat data lives on the interval");
        Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.n_interior());
        auto hat = [](double x) { return x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x; };
        // Two-point Gauss on each sub-segment; exact since v is linear off 0.5.
        static constexpr double g0 = 0.21132486540518711775, g1 = 0.78867513459481288225;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const auto& v = mesh.elems[e];
            const double xa = mesh.nodes[v[0]][0], xb = mesh.nodes[v[1]][0];
            double splits[3] = {xa, xb, xb};
            int ns = 1;
            if (xa < 0.5 && 0.5 < xb) { splits[1] = 0.5; splits[2] = xb; ns = 2; }
            for (int s = 0; s < ns; ++s) {
                const double lo = splits[s], hi = splits[s + 1], len = hi - lo;
                for (const double g : {g0, g1}) {
                    const double x = lo + g * len;
                    const double w = 0.5 * len * hat(x);
                    const double phi1 = (x - xa) / (xb - xa);
                    if (mesh.interior_index[v[0]] >= 0) load[mesh.interior_index[v[0]]] += w * (1.0 - phi1);
                    if (mesh.interior_index[v[1]] >= 0) load[mesh.interior_index[v[1]]] += w * phi1;
                }
            }
        }
        return load;
    }

    if (mesh.dim != 2) throw std::invalid_argument("checkerboard data lives on the square");
    Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.n_interior());
    for (int e = 0; e < mesh.n_elems(); ++e) {
        const auto& v = mesh.elems[e];
        const auto& a = mesh.nodes[v[0]];
        const auto& b = mesh.nodes[v[1]];
        const auto& c = mesh.nodes[v[2]];
        const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
        for (const auto [keep_x_ge, keep_y_ge] : {std::pair{true, true}, std::pair{false, false}}) {
            Poly poly = {{a[0], a[1]}, {b[0], b[1]}, {c[0], c[1]}};
            poly = clip_halfplane(poly, 0, 0.5, keep_x_ge);
            if (poly.size() >= 3) poly = clip_halfplane(poly, 1, 0.5, keep_y_ge);
            if (poly.size() < 3) continue;
            for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
                const auto& p0 = poly[0];
                const auto& p1 = poly[k];
                const auto& p2 = poly[k + 1];
                const double area = std::abs((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                                             (p2[0] - p0[0]) * (p1[1] - p0[1])) / 2.0;
                if (area < 1e-30) continue;
                const double cx = (p0[0] + p1[0] + p2[0]) / 3.0;
                const double cy = (p0[1] + p1[1] + p2[1]) / 3.0;
                // centroid rule is exact for the linear basis on the sub-triangle
                const double l1 = ((b[0] - cx) * (c[1] - cy) - (c[0] - cx) * (b[1] - cy)) / det;
                const double l2 = ((cx - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (cy - a[1])) / det;
                const double l3 = 1.0 - l1 - l2;
                const double bary[3] = {l1, l2, l3};
                for (int q = 0; q < 3; ++q)
                    if (mesh.interior_index[v[q]] >= 0)
                        load[mesh.interior_index[v[q]]] += area * bary[q];
            }
        }
    }
    return load;
}

Eigen::VectorXd sine_series_at_nodes_1d(int m_interior, const Eigen::VectorXd& coeffs) {
    if (m_interior < 1) throw std::invalid_argument("sine_series_at_nodes_1d: m_interior >= 1");
    const int P = m_interior + 1;
    // fold modes by the exact periodicity sin(j p pi / P) in j with period 2P
    Eigen::VectorXd folded = Eigen::VectorXd::Zero(2 * P);
    for (int j = 1; j <= static_cast<int>(coeffs.size()); ++j) folded[j % (2 * P)] += coeffs[j - 1];
    Eigen::VectorXd effective(m_interior);
    for (int r = 1; r <= m_interior; ++r) effective[r - 1] = folded[r] - folded[2 * P - r];
    const auto tab = sine_table(P);
    return raw_sine_transform(effective, P, tab);
}

double l2_error_vs_sine_series_2d(const Mesh& mesh, const SparsePencil& pencil,
                                  const Eigen::VectorXd& w, const Eigen::MatrixXd& series) {
    if (mesh.dim != 2 || mesh.cells_per_side < 2)
        throw std::invalid_argument("l2_error_vs_sine_series_2d: needs a built-in square mesh");
    if (w.size() != pencil.n || series.rows() != series.cols())
        throw std::invalid_argument("l2_error_vs_sine_series_2d: dimension mismatch");
    const int n = mesh.cells_per_side;
    const int m = n - 1;
    const int J = static_cast<int>(series.rows());
    const double h = 1.0 / n;

    // Interior dof (p,q) -> w[(q-1)m + (p-1)] for the built-in row-major layout.
    Eigen::MatrixXd W(m, m); // W(q-1, p-1)
    for (int q = 1; q <= m; ++q)
        for (int p = 1; p <= m; ++p) W(q - 1, p - 1) = w[(q - 1) * m + (p - 1)];

    Eigen::MatrixXd S(J, m), C(J, m);
    for (int j = 1; j <= J; ++j)
        for (int p = 1; p <= m; ++p) {
            S(j - 1, p - 1) = std::sin(kPi * j * p * h);
            C(j - 1, p - 1) = std::cos(kPi * j * p * h);
        }
    const Eigen::MatrixXd SS = (S * W.transpose()) * S.transpose(); // SS(j,k)
    const Eigen::MatrixXd CC = (C * W.transpose()) * C.transpose();

    // (psi_jk, w_h) from the Fourier transform of the criss-cross P1 hat
    // (three-direction box spline): F(a,c) = sinc(a/2) sinc(c/2) sinc((a+c)/2).
    double dot = 0.0;
    for (int j = 1; j <= J; ++j) {
        const double th = j * kPi * h;
        const double sj = sinc(th / 2.0);
        for (int k = 1; k <= J; ++k) {
            const double eta = k * kPi * h;
            const double base = sj * sinc(eta / 2.0);
            const double Fm = base * sinc((th - eta) / 2.0);
            const double Fp = base * sinc((th + eta) / 2.0);
            const double inner = h * h * ((Fm - Fp) * CC(j - 1, k - 1) + (Fm + Fp) * SS(j - 1, k - 1));
            dot += series(j - 1, k - 1) * inner;
        }
    }
    const double series_sq = series.squaredNorm();
    const double wh_sq = w.dot(pencil.M * w);
    return std::sqrt(std::max(series_sq - 2.0 * dot + wh_sq, 0.0));
}

} // namespace fracpar
