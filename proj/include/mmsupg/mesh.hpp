#ifndef MMSUPG_MESH_HPP
#define MMSUPG_MESH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "mmsupg/geometry.hpp"

namespace mmsupg {

enum class VertexKind : std::uint8_t { Interior, BoundaryEdge, Corner };

// Which side of the unit square a boundary vertex/edge lies on.
enum class Side : std::uint8_t { None, Left, Right, Bottom, Top };

enum class EdgeFlow : std::uint8_t { Inflow, Outflow };

// Reference element used by an affine map.  The FEM unit right triangle
// (0,0),(1,0),(0,1) serves quadrature and basis work; the unit-area
// equilateral triangle serves the mesh-energy functional.
enum class RefElement { UnitRight, EquilateralUnitArea };

struct BoundaryEdge {
    int v0 = -1;        // oriented so the domain lies to the left
    int v1 = -1;
    Side side = Side::None;
    int element = -1;   // the single triangle owning this edge
};

struct AffineMap {
    Mat2 jacobian;          // F_K' (reference -> physical)
    Mat2 inverse_jacobian;  // J_K = (F_K')^{-1}
    double det_jacobian = 0.0;
    Vec2 origin;            // image of the reference origin vertex
};

class TriMesh {
public:
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<VertexKind> vertex_flags;
    std::vector<Side> vertex_sides;  // Side::None for interior and for corners

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_elements() const { return static_cast<int>(triangles.size()); }

    double signed_area(int k) const {
        const auto& t = triangles[static_cast<std::size_t>(k)];
        const Vec2 e1 = vertices[static_cast<std::size_t>(t[1])] - vertices[static_cast<std::size_t>(t[0])];
        const Vec2 e2 = vertices[static_cast<std::size_t>(t[2])] - vertices[static_cast<std::size_t>(t[0])];
        return 0.5 * (e1.x * e2.y - e1.y * e2.x);
    }

    double total_area() const;

    // Element adjacency across shared edges: neighbor(k, i) is the triangle
    // sharing the edge opposite local vertex i, or -1 on the boundary.
    const std::vector<std::array<int, 3>>& element_neighbors() const;
    // One incident element per vertex (walk-search seeds).
    const std::vector<int>& vertex_element() const;
    // Edge-connected vertex neighborhoods.
    const std::vector<std::vector<int>>& vertex_neighbors() const;

    void rebuild_connectivity();

    // Structural checks: positive areas, index ranges, boundary edges owned by
    // exactly one triangle.  With require_unit_square also checks that the
    // triangles tile [0,1]^2 (total area 1 within 1e-12).  Throws
    // InvalidMeshError on violation.
    void validate(bool require_unit_square = false) const;

private:
    mutable std::vector<std::array<int, 3>> neighbors_;
    mutable std::vector<int> vertex_element_;
    mutable std::vector<std::vector<int>> vertex_neighbors_;
    mutable bool connectivity_built_ = false;
    void build_connectivity() const;
};

// Uniform n-by-n grid of the unit square, each cell split along the
// lower-left to upper-right diagonal: (n+1)^2 vertices, 2n^2 triangles.
TriMesh generate_uniform(int n);

// Affine map from the chosen reference element onto element k.
AffineMap affine_map(const TriMesh& mesh, int k, RefElement reference);

// sup of pairwise distances = longest edge.
double diam(const TriMesh& mesh, int k);

// Per-boundary-edge inflow/outflow tags: inflow where b(midpoint,t).n < 0,
// outflow otherwise (b.n = 0 counts as outflow).
std::vector<EdgeFlow> classify_boundary(const TriMesh& mesh,
                                        const std::function<Vec2(double, double, double)>& b,
                                        double t);

// Outward unit normal of a boundary edge.
Vec2 boundary_edge_normal(const TriMesh& mesh, const BoundaryEdge& e);

}  // namespace mmsupg

#endif
