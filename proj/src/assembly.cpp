#include "mmsupg/assembly.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmsupg/errors.hpp"

namespace mmsupg {

double peclet(double diam, double b_inf, double eps) {
    if (b_inf == 0.0) return 0.0;
    if (eps == 0.0) return std::numeric_limits<double>::infinity();
    return b_inf * diam / (2.0 * eps);
}

double tau(double diam, double b_inf, double eps) {
    if (b_inf == 0.0) return 0.0;
    const double pe = peclet(diam, b_inf, eps);
    return (diam / b_inf) * std::min(1.0, pe / 3.0);
}

namespace {

// Midpoint-of-edges quadrature, degree-2 exact: barycentric coordinates of
// the three points and the value of each basis function there.
struct QuadPoint {
    double phi[3];
};
constexpr QuadPoint kMidpointRule[3] = {
    {{0.5, 0.5, 0.0}},
    {{0.0, 0.5, 0.5}},
    {{0.5, 0.0, 0.5}},
};

struct ElementGeometry {
    Vec2 x[3];
    Vec2 grad[3];  // constant P1 basis gradients
    double area;
};

ElementGeometry element_geometry(const TriMesh& mesh, int k) {
    ElementGeometry g;
    const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
    for (int i = 0; i < 3; ++i) g.x[i] = mesh.vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])];
    const double two_a = (g.x[1].x - g.x[0].x) * (g.x[2].y - g.x[0].y) -
                         (g.x[1].y - g.x[0].y) * (g.x[2].x - g.x[0].x);
    g.area = 0.5 * two_a;
    g.grad[0] = Vec2(g.x[1].y - g.x[2].y, g.x[2].x - g.x[1].x) / two_a;
    g.grad[1] = Vec2(g.x[2].y - g.x[0].y, g.x[0].x - g.x[2].x) / two_a;
    g.grad[2] = Vec2(g.x[0].y - g.x[1].y, g.x[1].x - g.x[0].x) / two_a;
    return g;
}

Vec2 quad_position(const ElementGeometry& g, const QuadPoint& q) {
    return g.x[0] * q.phi[0] + g.x[1] * q.phi[1] + g.x[2] * q.phi[2];
}

}  // namespace

StabilizationParams compute_stabilization(const TriMesh& mesh, const ProblemSpec& problem,
                                          double t, bool enabled) {
    StabilizationParams s;
    s.enabled = enabled;
    const int ne = mesh.n_elements();
    s.tau.assign(static_cast<std::size_t>(ne), 0.0);
    s.peclet.assign(static_cast<std::size_t>(ne), 0.0);
    s.b_inf.assign(static_cast<std::size_t>(ne), 0.0);
    for (int k = 0; k < ne; ++k) {
        const ElementGeometry g = element_geometry(mesh, k);
        double b_inf = 0.0;
        for (const auto& q : kMidpointRule) {
            const Vec2 p = quad_position(g, q);
            b_inf = std::max(b_inf, problem.b(p.x, p.y, t).norm());
        }
        const double d = diam(mesh, k);
        s.b_inf[static_cast<std::size_t>(k)] = b_inf;
        s.peclet[static_cast<std::size_t>(k)] = peclet(d, b_inf, problem.eps);
        s.tau[static_cast<std::size_t>(k)] = enabled ? tau(d, b_inf, problem.eps) : 0.0;
    }
    return s;
}

AssembledSystem assemble(const TriMesh& mesh, const ProblemSpec& problem, double t, bool supg) {
    const int nv = mesh.n_vertices();
    const double eps = problem.eps;

    const StabilizationParams stab = compute_stabilization(mesh, problem, t, supg);

    Triplets mass_t, opr_t;
    std::vector<double> load(static_cast<std::size_t>(nv), 0.0);

    for (int k = 0; k < mesh.n_elements(); ++k) {
        const ElementGeometry g = element_geometry(mesh, k);
        if (g.area <= 1e-14)
            throw DegenerateElementError("assemble: element " + std::to_string(k) + " degenerate");
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const double w = g.area / 3.0;
        const double tau_k = stab.tau[static_cast<std::size_t>(k)];

        double m_loc[3][3] = {};
        double a_loc[3][3] = {};
        double f_loc[3] = {};

        // quadrature-point data
        Vec2 bq[3];
        double fq[3];
        Mat2 jbq[3];
        for (int q = 0; q < 3; ++q) {
            const Vec2 p = quad_position(g, kMidpointRule[q]);
            bq[q] = problem.b(p.x, p.y, t);
            fq[q] = problem.f(p.x, p.y, t);
            if (supg && eps > 0.0) jbq[q] = problem.b_jacobian(p.x, p.y, t);
        }

        for (int i = 0; i < 3; ++i) {       // test
            for (int j = 0; j < 3; ++j) {   // trial
                double mass = 0.0, conv = 0.0, supg_conv = 0.0, supg_mass = 0.0;
                for (int q = 0; q < 3; ++q) {
                    const double phi_i = kMidpointRule[q].phi[i];
                    const double phi_j = kMidpointRule[q].phi[j];
                    const double bgi = bq[q].dot(g.grad[i]);
                    const double bgj = bq[q].dot(g.grad[j]);
                    mass += w * phi_i * phi_j;
                    conv += w * phi_i * bgj;
                    if (supg) {
                        supg_conv += w * bgi * bgj;
                        supg_mass += w * phi_j * bgi;
                    }
                }
                double stiff = eps * g.area * g.grad[i].dot(g.grad[j]);
                double m_ij = mass;
                double a_ij = conv + stiff;
                if (supg) {
                    m_ij += tau_k * supg_mass;
                    a_ij += tau_k * supg_conv;
                    if (eps > 0.0) {
                        // eps (grad phi_j, grad(b.grad phi_i)) with
                        // grad(b.grad phi_i) = (grad b)^T grad phi_i
                        double cross = 0.0;
                        for (int q = 0; q < 3; ++q)
                            cross += w * g.grad[j].dot(jbq[q].transpose() * g.grad[i]);
                        a_ij += tau_k * eps * cross;
                    }
                }
                m_loc[i][j] = m_ij;
                a_loc[i][j] = a_ij;
            }
            double fi = 0.0;
            for (int q = 0; q < 3; ++q) {
                const double bgi = bq[q].dot(g.grad[i]);
                fi += w * fq[q] * (kMidpointRule[q].phi[i] + (supg ? tau_k * bgi : 0.0));
            }
            f_loc[i] = fi;
        }

        for (int i = 0; i < 3; ++i) {
            const int gi = tri[static_cast<std::size_t>(i)];
            for (int j = 0; j < 3; ++j) {
                const int gj = tri[static_cast<std::size_t>(j)];
                mass_t.add(gi, gj, m_loc[i][j]);
                opr_t.add(gi, gj, a_loc[i][j]);
            }
            load[static_cast<std::size_t>(gi)] += f_loc[i];
        }
    }

    AssembledSystem sys;
    sys.mass = compress(mass_t, nv, nv);
    sys.opr = compress(opr_t, nv, nv);
    sys.load = std::move(load);

    // Dirichlet set from the problem's boundary-condition type
    switch (problem.bc) {
        case BcKind::DirichletFromExact: {
            for (int v = 0; v < nv; ++v) {
                if (mesh.vertex_flags[static_cast<std::size_t>(v)] != VertexKind::Interior) {
                    const Vec2 p = mesh.vertices[static_cast<std::size_t>(v)];
                    sys.dirichlet_nodes.emplace_back(v, problem.exact(p.x, p.y, t));
                }
            }
            break;
        }
        case BcKind::DirichletZero: {
            for (int v = 0; v < nv; ++v)
                if (mesh.vertex_flags[static_cast<std::size_t>(v)] != VertexKind::Interior)
                    sys.dirichlet_nodes.emplace_back(v, 0.0);
            break;
        }
        case BcKind::InflowDirichletZeroOutflowNeumann: {
            const auto tags = classify_boundary(mesh, problem.b, t);
            std::vector<char> is_inflow_node(static_cast<std::size_t>(nv), 0);
            for (std::size_t e = 0; e < mesh.boundary_edges.size(); ++e) {
                if (tags[e] == EdgeFlow::Inflow) {
                    is_inflow_node[static_cast<std::size_t>(mesh.boundary_edges[e].v0)] = 1;
                    is_inflow_node[static_cast<std::size_t>(mesh.boundary_edges[e].v1)] = 1;
                }
            }
            for (int v = 0; v < nv; ++v)
                if (is_inflow_node[static_cast<std::size_t>(v)])
                    sys.dirichlet_nodes.emplace_back(v, 0.0);
            break;
        }
    }
    return sys;
}

void apply_dirichlet(SparseMatrix& combined, std::vector<double>& rhs,
                     const std::vector<std::pair<int, double>>& dirichlet_nodes) {
    for (const auto& [node, value] : dirichlet_nodes) {
        const int lo = combined.row_offsets[static_cast<std::size_t>(node)];
        const int hi = combined.row_offsets[static_cast<std::size_t>(node) + 1];
        for (int k = lo; k < hi; ++k)
            combined.values[static_cast<std::size_t>(k)] =
                (combined.col_indices[static_cast<std::size_t>(k)] == node) ? 1.0 : 0.0;
        rhs[static_cast<std::size_t>(node)] = value;
    }
}

}  // namespace mmsupg
