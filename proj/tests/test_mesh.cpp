#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "fracpar/mesh.hpp"

using namespace fracpar;

TEST_CASE("interval mesh: counts and spacing") {
    const Mesh mesh = build_interval_mesh(7);
    CHECK(mesh.dim == 1);
    CHECK(mesh.n_nodes() == 9);
    CHECK(mesh.n_elems() == 8);
    CHECK(mesh.n_interior() == 7);
    CHECK(mesh.h_max == doctest::Approx(1.0 / 8).epsilon(1e-15));
    CHECK(mesh.on_boundary.front() == 1);
    CHECK(mesh.on_boundary.back() == 1);
    CHECK(uniform_interval_spacing(mesh) == doctest::Approx(0.125).epsilon(1e-14));

    const Mesh fine = build_interval_mesh(127);
    CHECK(fine.n_interior() == 127);
    CHECK(fine.h_max == doctest::Approx(1.0 / 128).epsilon(1e-15));
}

TEST_CASE("interval mesh: degenerate sizes rejected") {
    CHECK_THROWS_AS(build_interval_mesh(0), std::invalid_argument);
    CHECK_THROWS_AS(build_interval_mesh(-3), std::invalid_argument);
}

TEST_CASE("square mesh: counts, h_max, interior dofs") {
    const Mesh coarse = build_square_mesh(1);
    CHECK(coarse.n_nodes() == 4);
    CHECK(coarse.n_elems() == 2);
    CHECK(coarse.n_interior() == 0);

    const Mesh mesh = build_square_mesh(4);
    CHECK(mesh.n_nodes() == 25);
    CHECK(mesh.n_elems() == 32);
    CHECK(mesh.n_interior() == 9);
    CHECK(mesh.h_max == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-14));

    CHECK(build_square_mesh(64).n_interior() == 3969);
    CHECK_THROWS_AS(build_square_mesh(0), std::invalid_argument);
}

TEST_CASE("element measures sum to |Omega| and are positive") {
    for (const Mesh& mesh : {build_interval_mesh(9), build_square_mesh(7)}) {
        double total = 0.0;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const double a = element_measure(mesh, e);
            CHECK(a > 0.0);
            total += a;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("interior indexing is a bijection onto 0..n-1") {
    const Mesh mesh = build_square_mesh(5);
    std::set<int> seen;
    for (int p = 0; p < mesh.n_nodes(); ++p) {
        if (mesh.on_boundary[p]) {
            CHECK(mesh.interior_index[p] == -1);
        } else {
            const int d = mesh.interior_index[p];
            CHECK(d >= 0);
            CHECK(d < mesh.n_interior());
            CHECK(mesh.interior_nodes[d] == p);
            seen.insert(d);
        }
    }
    CHECK(static_cast<int>(seen.size()) == mesh.n_interior());
}

TEST_CASE("quasi-uniformity and congruent shape ratios") {
    for (int n : {3, 8}) {
        const Mesh mesh = build_square_mesh(n);
        double rmin = 1e300, rmax = 0.0, shape_lo = 1e300, shape_hi = 0.0;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const double R = element_diameter(mesh, e);
            const double r = element_inradius(mesh, e);
            rmin = std::min(rmin, R);
            rmax = std::max(rmax, R);
            shape_lo = std::min(shape_lo, R / r);
            shape_hi = std::max(shape_hi, R / r);
        }
        CHECK(rmax / rmin <= 2.0);
        CHECK(shape_hi <= 10.0);
        // all triangles congruent to the unit right triangle
        CHECK(shape_hi - shape_lo < 1e-12);
        const double unit_ratio = std::sqrt(2.0) / ((2.0 - std::sqrt(2.0)) / 2.0) * 1.0;
        CHECK(shape_hi == doctest::Approx(unit_ratio).epsilon(1e-12));
    }
}

TEST_CASE("mesh import round-trips a structured mesh") {
    const Mesh ref = build_square_mesh(3);
    std::ostringstream os;
    os << ref.dim << ' ' << ref.n_nodes() << ' ' << ref.n_elems() << "\n";
    os.precision(17);
    for (const auto& p : ref.nodes) os << p[0] << ' ' << p[1] << "\n";
    for (const auto& e : ref.elems) os << e[0] << ' ' << e[1] << ' ' << e[2] << "\n";
    std::istringstream is(os.str());
    const Mesh mesh = read_mesh(is);
    CHECK(mesh.n_nodes() == ref.n_nodes());
    CHECK(mesh.n_elems() == ref.n_elems());
    CHECK(mesh.n_interior() == ref.n_interior());
    for (int p = 0; p < mesh.n_nodes(); ++p) CHECK(mesh.on_boundary[p] == ref.on_boundary[p]);
    CHECK(mesh.cells_per_side == 0);
}

TEST_CASE("mesh import rejects malformed input") {
    std::istringstream bad_header("3 4 2\n");
    CHECK_THROWS_AS(read_mesh(bad_header), std::invalid_argument);
    std::istringstream bad_index("1 3 2\n0\n0.5\n1\n0 1\n1 5\n");
    CHECK_THROWS_AS(read_mesh(bad_index), std::invalid_argument);
    std::istringstream zero_measure("1 3 2\n0\n0\n1\n0 1\n1 2\n");
    CHECK_THROWS_AS(read_mesh(zero_measure), std::invalid_argument);
}
