#include "mmsupg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "mmsupg/errors.hpp"

namespace mmsupg {

double TriMesh::total_area() const {
    double sum = 0.0;
    for (int k = 0; k < n_elements(); ++k) sum += signed_area(k);
    return sum;
}

void TriMesh::build_connectivity() const {
    const int nv = n_vertices();
    const int ne = n_elements();
    neighbors_.assign(static_cast<std::size_t>(ne), {-1, -1, -1});
    vertex_element_.assign(static_cast<std::size_t>(nv), -1);
    vertex_neighbors_.assign(static_cast<std::size_t>(nv), {});

    std::map<std::pair<int, int>, std::pair<int, int>> edge_owner;  // edge -> (element, local opposite)
    for (int k = 0; k < ne; ++k) {
        const auto& tri = triangles[static_cast<std::size_t>(k)];
        for (int i = 0; i < 3; ++i) {
            const int a = tri[static_cast<std::size_t>((i + 1) % 3)];
            const int b = tri[static_cast<std::size_t>((i + 2) % 3)];
            const auto key = std::minmax(a, b);
            auto it = edge_owner.find(key);
            if (it == edge_owner.end()) {
                edge_owner.emplace(key, std::make_pair(k, i));
            } else {
                neighbors_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = it->second.first;
                neighbors_[static_cast<std::size_t>(it->second.first)][static_cast<std::size_t>(it->second.second)] = k;
            }
            if (vertex_element_[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])] < 0)
                vertex_element_[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])] = k;
        }
    }

    std::vector<std::set<int>> nb(static_cast<std::size_t>(nv));
    for (const auto& tri : triangles) {
        for (int i = 0; i < 3; ++i) {
            nb[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])].insert(tri[static_cast<std::size_t>((i + 1) % 3)]);
            nb[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])].insert(tri[static_cast<std::size_t>((i + 2) % 3)]);
        }
    }
    for (int v = 0; v < nv; ++v)
        vertex_neighbors_[static_cast<std::size_t>(v)].assign(nb[static_cast<std::size_t>(v)].begin(),
                                                              nb[static_cast<std::size_t>(v)].end());
    connectivity_built_ = true;
}

const std::vector<std::array<int, 3>>& TriMesh::element_neighbors() const {
    if (!connectivity_built_) build_connectivity();
    return neighbors_;
}

const std::vector<int>& TriMesh::vertex_element() const {
    if (!connectivity_built_) build_connectivity();
    return vertex_element_;
}

const std::vector<std::vector<int>>& TriMesh::vertex_neighbors() const {
    if (!connectivity_built_) build_connectivity();
    return vertex_neighbors_;
}

void TriMesh::rebuild_connectivity() { connectivity_built_ = false; }

void TriMesh::validate(bool require_unit_square) const {
    const int nv = n_vertices();
    for (int k = 0; k < n_elements(); ++k) {
        const auto& tri = triangles[static_cast<std::size_t>(k)];
        for (int i : tri)
            if (i < 0 || i >= nv)
                throw InvalidMeshError("triangle " + std::to_string(k) + " has out-of-range vertex index");
        if (signed_area(k) <= 0.0)
            throw InvalidMeshError("triangle " + std::to_string(k) + " has non-positive area");
    }

    // every boundary edge must appear in exactly one triangle
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : triangles)
        for (int i = 0; i < 3; ++i)
            edge_count[std::minmax(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>((i + 1) % 3)])]++;
    for (const auto& e : boundary_edges) {
        auto it = edge_count.find(std::minmax(e.v0, e.v1));
        if (it == edge_count.end() || it->second != 1)
            throw InvalidMeshError("boundary edge not owned by exactly one triangle");
    }

    if (require_unit_square && std::abs(total_area() - 1.0) > 1e-12)
        throw InvalidMeshError("total area " + std::to_string(total_area()) + " != 1");
}

TriMesh generate_uniform(int n) {
    if (n < 1) throw std::invalid_argument("generate_uniform: n must be >= 1");

    TriMesh mesh;
    const int nv_side = n + 1;
    const double h = 1.0 / n;
    auto vid = [nv_side](int i, int j) { return j * nv_side + i; };

    mesh.vertices.reserve(static_cast<std::size_t>(nv_side * nv_side));
    for (int j = 0; j < nv_side; ++j)
        for (int i = 0; i < nv_side; ++i)
            mesh.vertices.emplace_back(i * h, j * h);

    // split each cell along the lower-left -> upper-right diagonal
    mesh.triangles.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int ll = vid(i, j), lr = vid(i + 1, j);
            const int ur = vid(i + 1, j + 1), ul = vid(i, j + 1);
            mesh.triangles.push_back({ll, lr, ur});
            mesh.triangles.push_back({ll, ur, ul});
        }
    }

    // boundary edges oriented with the domain on the left
    auto cell = [n](int i, int j) { return 2 * (j * n + i); };
    for (int i = 0; i < n; ++i)
        mesh.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), Side::Bottom, cell(i, 0)});
    for (int j = 0; j < n; ++j)
        mesh.boundary_edges.push_back({vid(n, j), vid(n, j + 1), Side::Right, cell(n - 1, j)});
    for (int i = n; i > 0; --i)
        mesh.boundary_edges.push_back({vid(i, n), vid(i - 1, n), Side::Top, cell(i - 1, n - 1) + 1});
    for (int j = n; j > 0; --j)
        mesh.boundary_edges.push_back({vid(0, j), vid(0, j - 1), Side::Left, cell(0, j - 1) + 1});

    mesh.vertex_flags.assign(mesh.vertices.size(), VertexKind::Interior);
    mesh.vertex_sides.assign(mesh.vertices.size(), Side::None);
    for (int j = 0; j < nv_side; ++j) {
        for (int i = 0; i < nv_side; ++i) {
            const bool bx = (i == 0 || i == n);
            const bool by = (j == 0 || j == n);
            const std::size_t v = static_cast<std::size_t>(vid(i, j));
            if (bx && by) {
                mesh.vertex_flags[v] = VertexKind::Corner;
            } else if (bx) {
                mesh.vertex_flags[v] = VertexKind::BoundaryEdge;
                mesh.vertex_sides[v] = (i == 0) ? Side::Left : Side::Right;
            } else if (by) {
                mesh.vertex_flags[v] = VertexKind::BoundaryEdge;
                mesh.vertex_sides[v] = (j == 0) ? Side::Bottom : Side::Top;
            }
        }
    }

    mesh.validate(true);
    return mesh;
}

AffineMap affine_map(const TriMesh& mesh, int k, RefElement reference) {
    const double area = mesh.signed_area(k);
    if (area <= 1e-14)
        throw DegenerateElementError("element " + std::to_string(k) + " is degenerate (area " +
                                     std::to_string(area) + ")");

    const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
    const Vec2 x0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const Vec2 x1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const Vec2 x2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const Mat2 d = Mat2::from_columns(x1 - x0, x2 - x0);

    AffineMap map;
    map.origin = x0;
    switch (reference) {
        case RefElement::UnitRight:
            map.jacobian = d;
            break;
        case RefElement::EquilateralUnitArea: {
            // vertices (0,0), (s,0), (s/2, s*sqrt(3)/2) with area 1
            const double s = 2.0 / std::pow(3.0, 0.25);
            const Mat2 e = Mat2::from_columns(Vec2(s, 0.0), Vec2(0.5 * s, 0.5 * s * std::sqrt(3.0)));
            map.jacobian = d * e.inverse();
            break;
        }
    }
    map.inverse_jacobian = map.jacobian.inverse();
    map.det_jacobian = map.jacobian.det();
    return map;
}

double diam(const TriMesh& mesh, int k) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
    const Vec2 a = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const Vec2 b = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const Vec2 c = mesh.vertices[static_cast<std::size_t>(tri[2])];
    return std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
}

Vec2 boundary_edge_normal(const TriMesh& mesh, const BoundaryEdge& e) {
    const Vec2 tangent = mesh.vertices[static_cast<std::size_t>(e.v1)] - mesh.vertices[static_cast<std::size_t>(e.v0)];
    const double len = tangent.norm();
    // domain on the left of v0->v1, outward normal points right
    return {tangent.y / len, -tangent.x / len};
}

std::vector<EdgeFlow> classify_boundary(const TriMesh& mesh,
                                        const std::function<Vec2(double, double, double)>& b,
                                        double t) {
    std::vector<EdgeFlow> tags;
    tags.reserve(mesh.boundary_edges.size());
    for (const auto& e : mesh.boundary_edges) {
        const Vec2 mid = (mesh.vertices[static_cast<std::size_t>(e.v0)] +
                          mesh.vertices[static_cast<std::size_t>(e.v1)]) * 0.5;
        const Vec2 n = boundary_edge_normal(mesh, e);
        tags.push_back(b(mid.x, mid.y, t).dot(n) < 0.0 ? EdgeFlow::Inflow : EdgeFlow::Outflow);
    }
    return tags;
}

}  // namespace mmsupg
