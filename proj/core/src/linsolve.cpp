#include "fracpar/linsolve.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracpar/errors.hpp"

namespace fracpar {

namespace {

using SpMatC = Eigen::SparseMatrix<Complex>;

constexpr double kPivotRel = 1e-14;

// Banded LU with partial pivoting for tridiagonal systems (the classic
// three-band scheme with one extra superdiagonal of fill).
struct TridiagonalLU {
    int n = 0;
    std::vector<Complex> dl, d, du, du2;
    std::vector<int> swap_next;

    void factor(std::vector<Complex> lower, std::vector<Complex> diag,
                std::vector<Complex> upper, double max_abs) {
        n = static_cast<int>(diag.size());
        dl = std::move(lower);
        d = std::move(diag);
        du = std::move(upper);
        du2.assign(n, Complex(0));
        swap_next.assign(n, 0);
        const double floor = kPivotRel * max_abs;
        for (int i = 0; i < n - 1; ++i) {
            if (std::abs(d[i]) < std::abs(dl[i])) {
                swap_next[i] = 1;
                std::swap(d[i], dl[i]);
                std::swap(du[i], d[i + 1]);
                if (i + 1 < n - 1) {
                    du2[i] = du[i + 1];
                    du[i + 1] = Complex(0);
                }
            }
            if (std::abs(d[i]) < floor)
                throw NearSingularError("factorize: pivot below threshold, shift too close to a pencil eigenvalue");
            const Complex m = dl[i] / d[i];
            dl[i] = m; // store multiplier
            d[i + 1] -= m * du[i];
            if (i + 1 < n - 1) du[i + 1] -= m * du2[i];
        }
        if (std::abs(d[n - 1]) < floor)
            throw NearSingularError("factorize: pivot below threshold, shift too close to a pencil eigenvalue");
    }

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const {
        Eigen::VectorXcd x = rhs;
        for (int i = 0; i < n - 1; ++i) {
            if (swap_next[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= dl[i] * x[i];
        }
        x[n - 1] /= d[n - 1];
        if (n > 1) {
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
            for (int i = n - 3; i >= 0; --i)
                x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        return x;
    }
};

int pencil_bandwidth(const SparsePencil& p) {
    int bw = 0;
    for (const auto* mat : {&p.A, &p.M})
        for (int k = 0; k < mat->outerSize(); ++k)
            for (SpMat::InnerIterator it(*mat, k); it; ++it)
                bw = std::max(bw, std::abs(static_cast<int>(it.row()) - static_cast<int>(it.col())));
    return bw;
}

} // namespace

struct ShiftedFactor::Impl {
    bool banded = false;
    TridiagonalLU tri;
    SpMatC matrix; // kept alive for the sparse solver
    Eigen::SparseLU<SpMatC, Eigen::COLAMDOrdering<int>> sparse;
};

ShiftedFactor::ShiftedFactor() : impl_(new Impl) {}
ShiftedFactor::ShiftedFactor(ShiftedFactor&&) noexcept = default;
ShiftedFactor& ShiftedFactor::operator=(ShiftedFactor&&) noexcept = default;
ShiftedFactor::~ShiftedFactor() = default;

Eigen::VectorXcd ShiftedFactor::solve(const Eigen::VectorXcd& rhs) const {
    if (rhs.size() != n_) throw std::invalid_argument("ShiftedFactor::solve: dimension mismatch");
    if (impl_->banded) return impl_->tri.solve(rhs);
    Eigen::VectorXcd x = impl_->sparse.solve(rhs);
    if (impl_->sparse.info() != Eigen::Success)
        throw NumericalError("ShiftedFactor::solve: sparse backsolve failed");
    return x;
}

ShiftedFactor factorize(const SparsePencil& pencil, Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("factorize: shift must be finite");
    ShiftedFactor f;
    f.shift_ = z;
    f.n_ = pencil.n;

    if (pencil_bandwidth(pencil) <= 1) {
        const int n = pencil.n;
        std::vector<Complex> dl(n, Complex(0)), d(n, Complex(0)), du(n, Complex(0));
        auto accumulate = [&](const SpMat& mat, Complex scale) {
            for (int k = 0; k < mat.outerSize(); ++k)
                for (SpMat::InnerIterator it(mat, k); it; ++it) {
                    const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
                    const Complex v = scale * it.value();
                    if (i == j) d[i] += v;
                    else if (i == j + 1) dl[i - 1] += v;
                    else du[i] += v;
                }
        };
        accumulate(pencil.M, z);
        accumulate(pencil.A, Complex(-1.0));
        double max_abs = 0.0;
        for (int i = 0; i < n; ++i)
            max_abs = std::max({max_abs, std::abs(d[i]), std::abs(dl[i]), std::abs(du[i])});
        f.impl_->banded = true;
        f.impl_->tri.factor(std::move(dl), std::move(d), std::move(du), max_abs);
        return f;
    }

    SpMatC Z = (pencil.M.cast<Complex>() * z - pencil.A.cast<Complex>()).pruned();
    Z.makeCompressed();
    double max_abs = 0.0;
    for (int k = 0; k < Z.outerSize(); ++k)
        for (SpMatC::InnerIterator it(Z, k); it; ++it) max_abs = std::max(max_abs, std::abs(it.value()));
    f.impl_->matrix = std::move(Z);
    f.impl_->sparse.analyzePattern(f.impl_->matrix);
    f.impl_->sparse.factorize(f.impl_->matrix);
    if (f.impl_->sparse.info() != Eigen::Success)
        throw NearSingularError("factorize: sparse LU reported a singular pivot");

    // Crude inverse-norm probe: a shift at a pencil eigenvalue produces solution
    // growth of order 1/(eps * ||Z||); flag growth past the pivot threshold.
    Eigen::VectorXcd probe(pencil.n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < pencil.n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        probe[i] = (state >> 63) ? 1.0 : -1.0;
    }
    const Eigen::VectorXcd x = f.impl_->sparse.solve(probe);
    if (f.impl_->sparse.info() != Eigen::Success ||
        x.lpNorm<Eigen::Infinity>() * kPivotRel * max_abs > probe.lpNorm<Eigen::Infinity>())
        throw NearSingularError("factorize: shift too close to a pencil eigenvalue");
    return f;
}

} // namespace fracpar
