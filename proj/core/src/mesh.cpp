#include "fracpar/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracpar {

namespace {

constexpr double kBoundaryTol = 1e-12;

void index_interior(Mesh& mesh) {
    mesh.interior_index.assign(mesh.n_nodes(), -1);
    mesh.interior_nodes.clear();
    for (int p = 0; p < mesh.n_nodes(); ++p) {
        if (!mesh.on_boundary[p]) {
            mesh.interior_index[p] = static_cast<int>(mesh.interior_nodes.size());
            mesh.interior_nodes.push_back(p);
        }
    }
}

void compute_h_max(Mesh& mesh) {
    double h = 0.0;
    for (int e = 0; e < mesh.n_elems(); ++e) h = std::max(h, element_diameter(mesh, e));
    mesh.h_max = h;
}

} // namespace

Mesh build_interval_mesh(int m_interior) {
    if (m_interior < 1) throw std::invalid_argument("build_interval_mesh: m_interior must be >= 1");
    Mesh mesh;
    mesh.dim = 1;
    const int n_cells = m_interior + 1;
    const double h = 1.0 / n_cells;
    mesh.nodes.reserve(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) mesh.nodes.push_back({i * h, 0.0});
    mesh.elems.reserve(n_cells);
    for (int e = 0; e < n_cells; ++e) mesh.elems.push_back({e, e + 1, -1});
    mesh.on_boundary.assign(mesh.n_nodes(), 0);
    mesh.on_boundary.front() = 1;
    mesh.on_boundary.back() = 1;
    mesh.cells_per_side = n_cells;
    index_interior(mesh);
    compute_h_max(mesh);
    return mesh;
}

Mesh build_square_mesh(int n_per_side) {
    if (n_per_side < 1) throw std::invalid_argument("build_square_mesh: n_per_side must be >= 1");
    Mesh mesh;
    mesh.dim = 2;
    const int n = n_per_side;
    const int nn = n + 1;
    const double h = 1.0 / n;
    mesh.nodes.reserve(nn * nn);
    for (int j = 0; j < nn; ++j)
        for (int i = 0; i < nn; ++i) mesh.nodes.push_back({i * h, j * h});
    mesh.elems.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = j * nn + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + nn;
            const int v11 = v01 + 1;
            mesh.elems.push_back({v00, v10, v11});
            mesh.elems.push_back({v00, v11, v01});
        }
    }
    mesh.on_boundary.assign(mesh.n_nodes(), 0);
    for (int j = 0; j < nn; ++j)
        for (int i = 0; i < nn; ++i)
            if (i == 0 || j == 0 || i == n || j == n) mesh.on_boundary[j * nn + i] = 1;
    mesh.cells_per_side = n;
    index_interior(mesh);
    compute_h_max(mesh);
    return mesh;
}

Mesh read_mesh(std::istream& in) {
    Mesh mesh;
    int n_nodes = 0, n_elems = 0;
    if (!(in >> mesh.dim >> n_nodes >> n_elems))
        throw std::invalid_argument("mesh import: bad header line");
    if (mesh.dim != 1 && mesh.dim != 2)
        throw std::invalid_argument("mesh import: dim must be 1 or 2");
    if (n_nodes < 2 || n_elems < 1)
        throw std::invalid_argument("mesh import: empty mesh");
    mesh.nodes.resize(n_nodes);
    for (int p = 0; p < n_nodes; ++p) {
        double x = 0.0, y = 0.0;
        if (!(in >> x)) throw std::invalid_argument("mesh import: bad node line");
        if (mesh.dim == 2 && !(in >> y)) throw std::invalid_argument("mesh import: bad node line");
        mesh.nodes[p] = {x, y};
    }
    mesh.elems.resize(n_elems);
    for (int e = 0; e < n_elems; ++e) {
        std::array<int, 3> v{-1, -1, -1};
        for (int a = 0; a <= mesh.dim; ++a) {
            if (!(in >> v[a])) throw std::invalid_argument("mesh import: bad element line");
            if (v[a] < 0 || v[a] >= n_nodes) throw std::invalid_argument("mesh import: node index out of range");
        }
        mesh.elems[e] = v;
    }
    mesh.on_boundary.assign(n_nodes, 0);
    for (int p = 0; p < n_nodes; ++p) {
        const auto [x, y] = mesh.nodes[p];
        bool on = std::abs(x) < kBoundaryTol || std::abs(x - 1.0) < kBoundaryTol;
        if (mesh.dim == 2)
            on = on || std::abs(y) < kBoundaryTol || std::abs(y - 1.0) < kBoundaryTol;
        mesh.on_boundary[p] = on ? 1 : 0;
    }
    mesh.cells_per_side = 0;
    index_interior(mesh);
    for (int e = 0; e < n_elems; ++e)
        if (!(element_measure(mesh, e) > 0.0))
            throw std::invalid_argument("mesh import: element with nonpositive measure");
    compute_h_max(mesh);
    return mesh;
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("mesh import: cannot open " + path);
    return read_mesh(in);
}

double element_measure(const Mesh& mesh, int e) {
    const auto& v = mesh.elems[e];
    if (mesh.dim == 1) return std::abs(mesh.nodes[v[1]][0] - mesh.nodes[v[0]][0]);
    const auto& a = mesh.nodes[v[0]];
    const auto& b = mesh.nodes[v[1]];
    const auto& c = mesh.nodes[v[2]];
    return std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])) / 2.0;
}

double element_diameter(const Mesh& mesh, int e) {
    const auto& v = mesh.elems[e];
    if (mesh.dim == 1) return element_measure(mesh, e);
    double d = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            d = std::max(d, std::hypot(mesh.nodes[v[a]][0] - mesh.nodes[v[b]][0],
                                       mesh.nodes[v[a]][1] - mesh.nodes[v[b]][1]));
    return d;
}

double element_inradius(const Mesh& mesh, int e) {
    const auto& v = mesh.elems[e];
    if (mesh.dim == 1) return element_measure(mesh, e) / 2.0;
    const double area = element_measure(mesh, e);
    double per = 0.0;
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        per += std::hypot(mesh.nodes[v[a]][0] - mesh.nodes[v[b]][0],
                          mesh.nodes[v[a]][1] - mesh.nodes[v[b]][1]);
    }
    return 2.0 * area / per;
}

double uniform_interval_spacing(const Mesh& mesh) {
    if (mesh.dim != 1) return -1.0;
    const double h = 1.0 / mesh.n_elems();
    for (int e = 0; e < mesh.n_elems(); ++e)
        if (std::abs(element_measure(mesh, e) - h) > 1e-12) return -1.0;
    for (int p = 0; p < mesh.n_nodes(); ++p)
        if (std::abs(mesh.nodes[p][0] - p * h) > 1e-12) return -1.0;
    return h;
}

} // namespace fracpar
