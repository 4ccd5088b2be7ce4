#include "doctest.h"

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "fracpar/errors.hpp"
#include "fracpar/fem.hpp"
#include "fracpar/linsolve.hpp"
#include "fracpar/mesh.hpp"
#include "fracpar/spectral.hpp"

using namespace fracpar;
using C = std::complex<double>;

namespace {
Eigen::MatrixXcd dense_shift(const SparsePencil& p, C z) {
    return Eigen::MatrixXcd(p.M.cast<C>() * z - p.A.cast<C>());
}

Eigen::VectorXcd random_complex(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = C(dist(rng), dist(rng));
    return v;
}
} // namespace

TEST_CASE("1D shifted solve matches a dense LU oracle") {
    const Mesh mesh = build_interval_mesh(3);
    const SparsePencil p = assemble(mesh);
    const C z(0.0, 1.0);
    const Eigen::VectorXcd rhs = (p.M * Eigen::VectorXd::Ones(3)).cast<C>();
    const Eigen::VectorXcd x = factorize(p, z).solve(rhs);
    const Eigen::VectorXcd ref = dense_shift(p, z).partialPivLu().solve(rhs);
    CHECK((x - ref).norm() <= 1e-12 * ref.norm());
}

TEST_CASE("real eigenvalue shifts are reported near-singular") {
    const Mesh mesh = build_interval_mesh(7);
    const SparsePencil p = assemble(mesh);
    CHECK_THROWS_AS(factorize(p, C(interval_pencil_eigenvalue(7, 1), 0.0)), NearSingularError);

    const Mesh square = build_square_mesh(6);
    const SparsePencil p2 = assemble(square);
    const EigenBasis basis = eigendecompose(p2);
    CHECK_THROWS_AS(factorize(p2, C(basis.lambdas[0], 0.0)), NearSingularError);
}

TEST_CASE("residual contract on random right-hand sides") {
    for (int variant = 0; variant < 2; ++variant) {
        const Mesh mesh = variant ? build_square_mesh(8) : build_interval_mesh(31);
        const SparsePencil p = assemble(mesh);
        const C z(3.0, 7.0);
        const ShiftedFactor f = factorize(p, z);
        const Eigen::VectorXcd rhs = random_complex(p.n, 42 + variant);
        const Eigen::VectorXcd x = f.solve(rhs);
        const Eigen::VectorXcd res = dense_shift(p, z) * x - rhs;
        CHECK(res.norm() <= 1e-10 * rhs.norm());
    }
}

TEST_CASE("zero right-hand side yields the exact zero solution") {
    const SparsePencil p = assemble(build_interval_mesh(5));
    const Eigen::VectorXcd x = factorize(p, C(1.0, 2.0)).solve(Eigen::VectorXcd::Zero(5));
    CHECK(x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inverse consistency on coordinate vectors") {
    const SparsePencil p = assemble(build_square_mesh(5));
    const C z(-4.0, 9.0);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(p.n);
    e1[0] = 1.0;
    const Eigen::VectorXcd rhs = dense_shift(p, z) * e1;
    CHECK((factorize(p, z).solve(rhs) - e1).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("conjugate shifts give conjugate solutions for real data") {
    for (int variant = 0; variant < 2; ++variant) {
        const Mesh mesh = variant ? build_square_mesh(6) : build_interval_mesh(15);
        const SparsePencil p = assemble(mesh);
        const Eigen::VectorXcd rhs = random_complex(p.n, 7).real().cast<C>();
        for (const C z : {C(2.0, 5.0), C(0.5, -3.0), C(-1.0, 0.25)}) {
            const Eigen::VectorXcd x = factorize(p, z).solve(rhs);
            const Eigen::VectorXcd xc = factorize(p, std::conj(z)).solve(rhs);
            CHECK((xc - x.conjugate()).cwiseAbs().maxCoeff() <= 1e-12 * x.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("factorization succeeds for shifts off the spectrum") {
    const SparsePencil p = assemble(build_interval_mesh(15));
    const double lam1 = interval_pencil_eigenvalue(15, 1);
    // Im(z) != 0 or Re(z) < lambda_1: always factorable
    CHECK_NOTHROW(factorize(p, C(lam1, 1e-3)));
    CHECK_NOTHROW(factorize(p, C(0.5 * lam1, 0.0)));
    CHECK_NOTHROW(factorize(p, C(-10.0, 0.0)));
}

TEST_CASE("solve rejects mismatched dimensions") {
    const SparsePencil p = assemble(build_interval_mesh(5));
    const ShiftedFactor f = factorize(p, C(0.0, 1.0));
    CHECK_THROWS_AS(f.solve(Eigen::VectorXcd::Zero(4)), std::invalid_argument);
}
