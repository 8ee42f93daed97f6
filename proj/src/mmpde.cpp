#include "mmsupg/mmpde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mmsupg/errors.hpp"

namespace mmsupg {

void MmpdeConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("mmpde: alpha must be in (0, 1/2]");
    if (!(p > 1.0)) throw std::invalid_argument("mmpde: p must be > 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("mmpde: gamma must be positive");
    if (sub_steps < 0) throw std::invalid_argument("mmpde: sub_steps must be nonnegative");
    if (d_tau < 0.0) throw std::invalid_argument("mmpde: d_tau must be nonnegative");
}

namespace {

// Edge matrix of the unit-area equilateral reference and derived constants.
struct Reference {
    Mat2 e;        // [xi1-xi0 | xi2-xi0]
    Mat2 s;        // E^T E
    double det_e;  // = 2 (twice the unit area)
};

Reference reference_frame() {
    const double side = 2.0 / std::pow(3.0, 0.25);
    Reference r;
    r.e = Mat2::from_columns(Vec2(side, 0.0), Vec2(0.5 * side, 0.5 * side * std::sqrt(3.0)));
    r.s = r.e.transpose() * r.e;
    r.det_e = r.e.det();
    return r;
}

struct ElementEnergyTerms {
    double phi = 0.0;   // |K| G for this element
    Vec2 d_x0, d_x1, d_x2;
};

// Energy contribution of one element and (optionally) its derivative with
// respect to the three vertex positions, with the element metric frozen.
// Writing D = [x1-x0 | x2-x0], theta = det D, X = D^{-1}:
//   phi = c1 theta T^p + c2 theta^{1-p}
//   T   = tr(E X M^{-1} X^T E^T),  c1 = alpha sqrt(m)/2,
//   c2  = (1-2 alpha) 2^{2p-1} m^{(1-p)/2},  m = det M
// and d phi = tr(G dD) with
//   G = [c1 T^p + c2 (1-p) theta^{-p}] theta X - 2 c1 theta p T^{p-1} X M^{-1} X^T S X.
ElementEnergyTerms element_energy(const Vec2& x0, const Vec2& x1, const Vec2& x2,
                                  const Mat2& metric, const Reference& ref,
                                  double alpha, double p, bool with_gradient) {
    const Mat2 d = Mat2::from_columns(x1 - x0, x2 - x0);
    const double theta = d.det();
    if (theta <= 1e-14)
        throw InvalidMeshError("mmpde energy: inverted or degenerate element (det " +
                               std::to_string(theta) + ")");

    const Mat2 x = d.inverse();
    const double m = metric.det();
    const double sqrt_m = std::sqrt(m);
    const Mat2 minv = metric.inverse();

    const Mat2 exm = ref.e * x;  // J = E X
    const Mat2 jmj = exm * minv * exm.transpose();
    const double trace = jmj.trace();

    const double c1 = 0.5 * alpha * sqrt_m;
    const double c2 = (1.0 - 2.0 * alpha) * std::pow(2.0, 2.0 * p - 1.0) * std::pow(m, 0.5 * (1.0 - p));
    const double tp = std::pow(trace, p);

    ElementEnergyTerms out;
    out.phi = c1 * theta * tp + c2 * std::pow(theta, 1.0 - p);
    if (!with_gradient) return out;

    const double scalar = c1 * tp + c2 * (1.0 - p) * std::pow(theta, -p);
    const Mat2 chain = x * minv * x.transpose() * ref.s * x;
    const Mat2 g = scalar * theta * x - (2.0 * c1 * theta * p * std::pow(trace, p - 1.0)) * chain;

    out.d_x1 = Vec2(g.a, g.b);  // row 1 of G
    out.d_x2 = Vec2(g.c, g.d);  // row 2 of G
    out.d_x0 = Vec2(-g.a - g.c, -g.b - g.d);
    return out;
}

void project_boundary_gradient(const TriMesh& mesh, std::vector<Vec2>& grad) {
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        switch (mesh.vertex_flags[static_cast<std::size_t>(v)]) {
            case VertexKind::Corner:
                grad[static_cast<std::size_t>(v)] = Vec2(0.0, 0.0);
                break;
            case VertexKind::BoundaryEdge: {
                const Side s = mesh.vertex_sides[static_cast<std::size_t>(v)];
                if (s == Side::Left || s == Side::Right)
                    grad[static_cast<std::size_t>(v)].x = 0.0;
                else
                    grad[static_cast<std::size_t>(v)].y = 0.0;
                break;
            }
            case VertexKind::Interior:
                break;
        }
    }
}

}  // namespace

double energy(const TriMesh& mesh, const std::vector<Mat2>& element_tensors,
              const MmpdeConfig& cfg) {
    const Reference ref = reference_frame();
    double total = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        total += element_energy(mesh.vertices[static_cast<std::size_t>(tri[0])],
                                mesh.vertices[static_cast<std::size_t>(tri[1])],
                                mesh.vertices[static_cast<std::size_t>(tri[2])],
                                element_tensors[static_cast<std::size_t>(k)], ref,
                                cfg.alpha, cfg.p, false)
                     .phi;
    }
    return total;
}

std::vector<Vec2> energy_gradient(const TriMesh& mesh, const std::vector<Mat2>& element_tensors,
                                  const MmpdeConfig& cfg) {
    const Reference ref = reference_frame();
    std::vector<Vec2> grad(static_cast<std::size_t>(mesh.n_vertices()), Vec2(0.0, 0.0));
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const ElementEnergyTerms terms =
            element_energy(mesh.vertices[static_cast<std::size_t>(tri[0])],
                           mesh.vertices[static_cast<std::size_t>(tri[1])],
                           mesh.vertices[static_cast<std::size_t>(tri[2])],
                           element_tensors[static_cast<std::size_t>(k)], ref,
                           cfg.alpha, cfg.p, true);
        grad[static_cast<std::size_t>(tri[0])] += terms.d_x0;
        grad[static_cast<std::size_t>(tri[1])] += terms.d_x1;
        grad[static_cast<std::size_t>(tri[2])] += terms.d_x2;
    }
    project_boundary_gradient(mesh, grad);
    return grad;
}

namespace {

double min_element_diameter(const TriMesh& mesh) {
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < mesh.n_elements(); ++k) d = std::min(d, diam(mesh, k));
    return d;
}

double min_edge_length(const TriMesh& mesh) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& tri : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            const Vec2 a = mesh.vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])];
            const Vec2 b = mesh.vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>((i + 1) % 3)])];
            d = std::min(d, (a - b).norm());
        }
    }
    return d;
}

bool all_areas_positive(const TriMesh& mesh) {
    // slightly above the degeneracy threshold of the energy evaluation
    for (int k = 0; k < mesh.n_elements(); ++k)
        if (mesh.signed_area(k) <= 1e-14) return false;
    return true;
}

// Move vertices by -dtau * v and keep boundary vertices on their side.
void displace(const TriMesh& base, const std::vector<Vec2>& velocity, double dtau, TriMesh& out) {
    for (int v = 0; v < base.n_vertices(); ++v) {
        const std::size_t sv = static_cast<std::size_t>(v);
        Vec2 pos = base.vertices[sv] - dtau * velocity[sv];
        switch (base.vertex_flags[sv]) {
            case VertexKind::Corner:
                pos = base.vertices[sv];
                break;
            case VertexKind::BoundaryEdge:
                switch (base.vertex_sides[sv]) {
                    case Side::Left: pos.x = 0.0; pos.y = std::clamp(pos.y, 0.0, 1.0); break;
                    case Side::Right: pos.x = 1.0; pos.y = std::clamp(pos.y, 0.0, 1.0); break;
                    case Side::Bottom: pos.y = 0.0; pos.x = std::clamp(pos.x, 0.0, 1.0); break;
                    case Side::Top: pos.y = 1.0; pos.x = std::clamp(pos.x, 0.0, 1.0); break;
                    case Side::None: break;
                }
                break;
            case VertexKind::Interior:
                break;
        }
        out.vertices[sv] = pos;
    }
}

}  // namespace

TriMesh mmpde_step(const TriMesh& mesh, const MetricField& metric, const MmpdeConfig& cfg) {
    cfg.validate();

    TriMesh current = mesh;
    TriMesh candidate = mesh;

    std::vector<double> p_weight(static_cast<std::size_t>(mesh.n_vertices()));
    for (int v = 0; v < mesh.n_vertices(); ++v)
        p_weight[static_cast<std::size_t>(v)] =
            std::pow(metric.vertex_tensors[static_cast<std::size_t>(v)].det(), 0.5 * (cfg.p - 1.0));

    double e_current = energy(current, metric.element_tensors, cfg);
    const double dtau_base = (cfg.d_tau > 0.0)
                                 ? cfg.d_tau
                                 : cfg.gamma * min_element_diameter(mesh) * min_element_diameter(mesh);
    double dtau_mem = dtau_base;

    std::vector<Vec2> velocity(static_cast<std::size_t>(mesh.n_vertices()));
    for (int sub = 0; sub < cfg.sub_steps; ++sub) {
        const std::vector<Vec2> grad = energy_gradient(current, metric.element_tensors, cfg);
        double v_max = 0.0;
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            velocity[static_cast<std::size_t>(v)] =
                (p_weight[static_cast<std::size_t>(v)] / cfg.gamma) * grad[static_cast<std::size_t>(v)];
            v_max = std::max(v_max, velocity[static_cast<std::size_t>(v)].norm());
        }
        if (v_max == 0.0) break;  // stationary mesh

        // trust region: first try never displaces more than 40% of the
        // shortest edge, halvings handle the rest
        double dtau = std::min(dtau_mem, 0.4 * min_edge_length(current) / v_max);
        bool accepted = false;
        for (int halving = 0; halving <= 20; ++halving) {
            displace(current, velocity, dtau, candidate);
            if (all_areas_positive(candidate)) {
                const double e_candidate = energy(candidate, metric.element_tensors, cfg);
                if (e_candidate <= e_current) {
                    current.vertices = candidate.vertices;
                    e_current = e_candidate;
                    dtau_mem = 2.0 * dtau;
                    accepted = true;
                    break;
                }
            }
            dtau *= 0.5;
        }
        if (!accepted)
            throw AdaptationFailure("mmpde_step: 20 halvings exhausted without a valid descent step");
    }
    return current;
}

namespace {

struct Barycentric {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0;
    double min() const { return std::min({l0, l1, l2}); }
};

Barycentric barycentric(const TriMesh& mesh, int k, const Vec2& p) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
    const Vec2 x0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const Vec2 x1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const Vec2 x2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const Mat2 t = Mat2::from_columns(x1 - x0, x2 - x0);
    const Vec2 l = t.inverse() * (p - x0);
    return {1.0 - l.x - l.y, l.x, l.y};
}

struct Located {
    int element = -1;
    Barycentric bary;
};

Located locate_point(const TriMesh& mesh, const Vec2& p, int seed) {
    const auto& neighbors = mesh.element_neighbors();
    const int ne = mesh.n_elements();
    constexpr double kInsideTol = -1e-12;

    int cur = (seed >= 0 && seed < ne) ? seed : 0;
    for (int step = 0; step < 2 * ne; ++step) {
        const Barycentric b = barycentric(mesh, cur, p);
        if (b.min() >= kInsideTol) return {cur, b};
        int worst = 0;
        double worst_val = b.l0;
        if (b.l1 < worst_val) { worst = 1; worst_val = b.l1; }
        if (b.l2 < worst_val) { worst = 2; }
        const int next = neighbors[static_cast<std::size_t>(cur)][static_cast<std::size_t>(worst)];
        if (next < 0) break;  // hit the boundary, fall through to brute force
        cur = next;
    }

    Located best;
    double best_min = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < ne; ++k) {
        const Barycentric b = barycentric(mesh, k, p);
        if (b.min() > best_min) {
            best_min = b.min();
            best = {k, b};
        }
    }
    return best;
}

}  // namespace

std::vector<double> interpolate(const TriMesh& old_mesh, const std::vector<double>& u_old,
                                const TriMesh& new_mesh) {
    if (u_old.size() != old_mesh.vertices.size())
        throw std::invalid_argument("interpolate: field size does not match source mesh");

    const bool same_vertex_count = old_mesh.n_vertices() == new_mesh.n_vertices();
    const auto& seeds = old_mesh.vertex_element();

    std::vector<double> u_new(new_mesh.vertices.size(), 0.0);
    int last_found = 0;
    for (int v = 0; v < new_mesh.n_vertices(); ++v) {
        const Vec2 p = new_mesh.vertices[static_cast<std::size_t>(v)];
        const int seed = same_vertex_count ? seeds[static_cast<std::size_t>(v)] : last_found;
        Located loc = locate_point(old_mesh, p, seed);
        last_found = loc.element;

        Barycentric b = loc.bary;
        if (b.min() < 0.0) {
            // clamp and verify the point is outside by roundoff only
            b.l0 = std::max(b.l0, 0.0);
            b.l1 = std::max(b.l1, 0.0);
            b.l2 = std::max(b.l2, 0.0);
            const double sum = b.l0 + b.l1 + b.l2;
            b.l0 /= sum;
            b.l1 /= sum;
            b.l2 /= sum;
            const auto& tri = old_mesh.triangles[static_cast<std::size_t>(loc.element)];
            const Vec2 q = old_mesh.vertices[static_cast<std::size_t>(tri[0])] * b.l0 +
                           old_mesh.vertices[static_cast<std::size_t>(tri[1])] * b.l1 +
                           old_mesh.vertices[static_cast<std::size_t>(tri[2])] * b.l2;
            if ((q - p).norm() > 1e-9)
                throw InterpolationFailure("interpolate: point (" + std::to_string(p.x) + ", " +
                                           std::to_string(p.y) + ") lies outside the source mesh");
        }
        const auto& tri = old_mesh.triangles[static_cast<std::size_t>(loc.element)];
        u_new[static_cast<std::size_t>(v)] = b.l0 * u_old[static_cast<std::size_t>(tri[0])] +
                                             b.l1 * u_old[static_cast<std::size_t>(tri[1])] +
                                             b.l2 * u_old[static_cast<std::size_t>(tri[2])];
    }
    return u_new;
}

}  // namespace mmsupg
