#pragma once

#include <Eigen/Core>
#include <complex>
#include <memory>

#include "fracpar/fem.hpp"

namespace fracpar {

using Complex = std::complex<double>;

/// Reusable factorization of the shifted pencil matrix zM - A.
///
/// Tridiagonal pencils (1D meshes) use a banded LU with partial pivoting;
/// everything else goes through a sparse LU with fill-reducing ordering.
/// A single factor may be shared for concurrent reads only if solves are
/// externally serialized; factors at distinct shifts are fully independent.
class ShiftedFactor {
public:
    /// Solve (zM - A) x = rhs. Throws std::invalid_argument on size mismatch.
    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;

    Complex shift() const { return shift_; }
    int size() const { return n_; }

    ShiftedFactor(ShiftedFactor&&) noexcept;
    ShiftedFactor& operator=(ShiftedFactor&&) noexcept;
    ~ShiftedFactor();

private:
    friend ShiftedFactor factorize(const SparsePencil&, Complex);
    ShiftedFactor();

    struct Impl;
    std::unique_ptr<Impl> impl_;
    Complex shift_{};
    int n_ = 0;
};

/// Factor zM - A. Throws NearSingularError when a pivot falls below
/// 1e-14 * max|entry| (the shift is too close to a pencil eigenvalue; this
/// cannot happen for contour points with b < lambda_1/sqrt(2)).
ShiftedFactor factorize(const SparsePencil& pencil, Complex z);

} // namespace fracpar
