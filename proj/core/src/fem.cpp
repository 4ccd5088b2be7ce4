#include "fracpar/fem.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracpar/errors.hpp"
#include "gauss.hpp"

namespace fracpar {

namespace {

using Triplet = Eigen::Triplet<double>;

struct LocalGeometry {
    std::array<int, 3> v{};
    double measure = 0.0;
    // P1 gradient components on the element (2D), or +-1/len (1D)
    std::array<double, 3> gx{}, gy{};
    std::array<double, 2> centroid{};
};

LocalGeometry local_geometry(const Mesh& mesh, int e) {
    LocalGeometry g;
    g.v = mesh.elems[e];
    if (mesh.dim == 1) {
        const double xa = mesh.nodes[g.v[0]][0], xb = mesh.nodes[g.v[1]][0];
        const double len = xb - xa;
        g.measure = std::abs(len);
        g.gx = {-1.0 / len, 1.0 / len, 0.0};
        g.centroid = {(xa + xb) / 2.0, 0.0};
    } else {
        const auto& a = mesh.nodes[g.v[0]];
        const auto& b = mesh.nodes[g.v[1]];
        const auto& c = mesh.nodes[g.v[2]];
        const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
        g.measure = std::abs(det) / 2.0;
        g.gx = {(b[1] - c[1]) / det, (c[1] - a[1]) / det, (a[1] - b[1]) / det};
        g.gy = {(c[0] - b[0]) / det, (a[0] - c[0]) / det, (b[0] - a[0]) / det};
        g.centroid = {(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0};
    }
    return g;
}

template <typename EmitA, typename EmitM>
void assemble_local(const Mesh& mesh, const ScalarField* coeff, EmitA&& emit_a, EmitM&& emit_m) {
    const int nv = mesh.nodes_per_elem();
    for (int e = 0; e < mesh.n_elems(); ++e) {
        const LocalGeometry g = local_geometry(mesh, e);
        const double c = coeff ? (*coeff)(g.centroid[0], g.centroid[1]) : 1.0;
        for (int a = 0; a < nv; ++a) {
            for (int b = 0; b < nv; ++b) {
                const double ka =
                    c * g.measure * (g.gx[a] * g.gx[b] + g.gy[a] * g.gy[b]);
                // consistent P1 mass: |tau|/12 * (1 + delta_ab) in 2D,
                // len/6 * (1 + delta_ab) in 1D
                const double ma = (mesh.dim == 1)
                                      ? g.measure / 6.0 * (a == b ? 2.0 : 1.0)
                                      : g.measure / 12.0 * (a == b ? 2.0 : 1.0);
                emit_a(g.v[a], g.v[b], ka);
                emit_m(g.v[a], g.v[b], ma);
            }
        }
    }
}

} // namespace

std::pair<SpMat, SpMat> assemble_full(const Mesh& mesh) {
    std::vector<Triplet> ta, tm;
    ta.reserve(mesh.n_elems() * 9);
    tm.reserve(mesh.n_elems() * 9);
    assemble_local(
        mesh, nullptr,
        [&](int i, int j, double v) { ta.emplace_back(i, j, v); },
        [&](int i, int j, double v) { tm.emplace_back(i, j, v); });
    SpMat A(mesh.n_nodes(), mesh.n_nodes()), M(mesh.n_nodes(), mesh.n_nodes());
    A.setFromTriplets(ta.begin(), ta.end());
    M.setFromTriplets(tm.begin(), tm.end());
    return {std::move(A), std::move(M)};
}

static SparsePencil assemble_impl(const Mesh& mesh, const ScalarField* coeff) {
    if (mesh.n_interior() < 1)
        throw std::invalid_argument("assemble: mesh has no interior dofs");
    std::vector<Triplet> ta, tm;
    ta.reserve(mesh.n_elems() * 9);
    tm.reserve(mesh.n_elems() * 9);
    const auto& idx = mesh.interior_index;
    auto keep = [&](auto& out, int i, int j, double v) {
        if (idx[i] >= 0 && idx[j] >= 0) out.emplace_back(idx[i], idx[j], v);
    };
    assemble_local(
        mesh, coeff,
        [&](int i, int j, double v) { keep(ta, i, j, v); },
        [&](int i, int j, double v) { keep(tm, i, j, v); });
    SparsePencil p;
    p.n = mesh.n_interior();
    p.A.resize(p.n, p.n);
    p.M.resize(p.n, p.n);
    p.A.setFromTriplets(ta.begin(), ta.end());
    p.M.setFromTriplets(tm.begin(), tm.end());
    p.A.makeCompressed();
    p.M.makeCompressed();
    return p;
}

SparsePencil assemble(const Mesh& mesh) { return assemble_impl(mesh, nullptr); }

SparsePencil assemble(const Mesh& mesh, const ScalarField& diffusion_coeff) {
    return assemble_impl(mesh, &diffusion_coeff);
}

Eigen::VectorXd load_vector(const Mesh& mesh, const ScalarField& f) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.n_interior());
    const auto& idx = mesh.interior_index;
    if (mesh.dim == 1) {
        using detail::Gauss1D;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const auto& v = mesh.elems[e];
            const double xa = mesh.nodes[v[0]][0], xb = mesh.nodes[v[1]][0];
            const double len = xb - xa;
            for (int q = 0; q < Gauss1D::n; ++q) {
                const double s = Gauss1D::x[q];
                const double x = xa + s * len;
                const double fv = f(x, 0.0) * Gauss1D::w[q] * len;
                if (idx[v[0]] >= 0) b[idx[v[0]]] += fv * (1.0 - s);
                if (idx[v[1]] >= 0) b[idx[v[1]]] += fv * s;
            }
        }
    } else {
        using detail::GaussTri;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const auto& v = mesh.elems[e];
            const auto& a = mesh.nodes[v[0]];
            const auto& bn = mesh.nodes[v[1]];
            const auto& c = mesh.nodes[v[2]];
            const double area = element_measure(mesh, e);
            for (int q = 0; q < GaussTri::n; ++q) {
                const double l1 = GaussTri::p[q][0], l2 = GaussTri::p[q][1];
                const double l0 = 1.0 - l1 - l2;
                const double x = l0 * a[0] + l1 * bn[0] + l2 * c[0];
                const double y = l0 * a[1] + l1 * bn[1] + l2 * c[1];
                const double fv = f(x, y) * GaussTri::w[q] * area;
                const std::array<double, 3> bary = {l0, l1, l2};
                for (int k = 0; k < 3; ++k)
                    if (idx[v[k]] >= 0) b[idx[v[k]]] += fv * bary[k];
            }
        }
    }
    return b;
}

Eigen::VectorXd l2_project(const Mesh& mesh, const SparsePencil& pencil, const ScalarField& f) {
    Eigen::SimplicialLDLT<SpMat> mass(pencil.M);
    if (mass.info() != Eigen::Success)
        throw NumericalError("l2_project: mass factorization failed");
    Eigen::VectorXd c = mass.solve(load_vector(mesh, f));
    if (mass.info() != Eigen::Success)
        throw NumericalError("l2_project: mass solve failed");
    return c;
}

Eigen::VectorXd interpolate(const Mesh& mesh, const ScalarField& f) {
    Eigen::VectorXd c(mesh.n_interior());
    for (int d = 0; d < mesh.n_interior(); ++d) {
        const auto& p = mesh.nodes[mesh.interior_nodes[d]];
        c[d] = f(p[0], p[1]);
    }
    return c;
}

double l2_norm(const SparsePencil& pencil, const Eigen::VectorXd& c) {
    if (c.size() != pencil.n) throw std::invalid_argument("l2_norm: dimension mismatch");
    return std::sqrt(c.dot(pencil.M * c));
}

double l2_norm(const SparsePencil& pencil, const Eigen::VectorXcd& c) {
    if (c.size() != pencil.n) throw std::invalid_argument("l2_norm: dimension mismatch");
    return std::sqrt(std::abs(c.dot(pencil.M * c)));
}

double l2_error(const Mesh& mesh, const Eigen::VectorXd& c, const ScalarField& f) {
    if (c.size() != mesh.n_interior()) throw std::invalid_argument("l2_error: dimension mismatch");
    const auto& idx = mesh.interior_index;
    auto dof_val = [&](int node) { return idx[node] >= 0 ? c[idx[node]] : 0.0; };
    double acc = 0.0;
    if (mesh.dim == 1) {
        using detail::Gauss1D;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const auto& v = mesh.elems[e];
            const double xa = mesh.nodes[v[0]][0], xb = mesh.nodes[v[1]][0];
            const double len = xb - xa;
            const double ua = dof_val(v[0]), ub = dof_val(v[1]);
            for (int q = 0; q < Gauss1D::n; ++q) {
                const double s = Gauss1D::x[q];
                const double diff = ua * (1.0 - s) + ub * s - f(xa + s * len, 0.0);
                acc += Gauss1D::w[q] * len * diff * diff;
            }
        }
    } else {
        using detail::GaussTri;
        for (int e = 0; e < mesh.n_elems(); ++e) {
            const auto& v = mesh.elems[e];
            const auto& a = mesh.nodes[v[0]];
            const auto& bn = mesh.nodes[v[1]];
            const auto& cc = mesh.nodes[v[2]];
            const double area = element_measure(mesh, e);
            const std::array<double, 3> uv = {dof_val(v[0]), dof_val(v[1]), dof_val(v[2])};
            for (int q = 0; q < GaussTri::n; ++q) {
                const double l1 = GaussTri::p[q][0], l2 = GaussTri::p[q][1];
                const double l0 = 1.0 - l1 - l2;
                const double x = l0 * a[0] + l1 * bn[0] + l2 * cc[0];
                const double y = l0 * a[1] + l1 * bn[1] + l2 * cc[1];
                const double diff = l0 * uv[0] + l1 * uv[1] + l2 * uv[2] - f(x, y);
                acc += GaussTri::w[q] * area * diff * diff;
            }
        }
    }
    return std::sqrt(acc);
}

} // namespace fracpar
