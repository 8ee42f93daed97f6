#include "mmsupg/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace mmsupg {

bool fit_quadratic_hessian(const std::vector<Vec2>& points, const std::vector<double>& values,
                           const Vec2& center, Mat2& hessian) {
    const std::size_t n = points.size();
    if (n < 6) return false;

    // scale local coordinates to unit size for conditioning
    double scale = 0.0;
    for (const auto& p : points) scale = std::max(scale, (p - center).norm());
    if (scale == 0.0) return false;

    // normal equations for q = c0 + c1 X + c2 Y + c3 X^2 + c4 XY + c5 Y^2
    double ata[6][6] = {};
    double atb[6] = {};
    for (std::size_t r = 0; r < n; ++r) {
        const Vec2 d = (points[r] - center) / scale;
        const double row[6] = {1.0, d.x, d.y, d.x * d.x, d.x * d.y, d.y * d.y};
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * values[r];
        }
    }

    // Gaussian elimination with partial pivoting; small pivots flag rank
    // deficiency (collinear or otherwise degenerate patches).
    double max_diag = 0.0;
    for (int i = 0; i < 6; ++i) max_diag = std::max(max_diag, std::abs(ata[i][i]));
    const double tol = 1e-10 * max_diag;

    int perm[6] = {0, 1, 2, 3, 4, 5};
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        for (int r = col + 1; r < 6; ++r)
            if (std::abs(ata[perm[r]][col]) > std::abs(ata[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = ata[perm[col]][col];
        if (std::abs(p) <= tol) return false;
        for (int r = col + 1; r < 6; ++r) {
            const double fac = ata[perm[r]][col] / p;
            for (int c = col; c < 6; ++c) ata[perm[r]][c] -= fac * ata[perm[col]][c];
            atb[perm[r]] -= fac * atb[perm[col]];
        }
    }
    double c[6];
    for (int i = 5; i >= 0; --i) {
        double s = atb[perm[i]];
        for (int j = i + 1; j < 6; ++j) s -= ata[perm[i]][j] * c[j];
        c[i] = s / ata[perm[i]][i];
    }

    const double inv_s2 = 1.0 / (scale * scale);
    hessian = Mat2(2.0 * c[3], c[4], c[4], 2.0 * c[5]) * inv_s2;
    return true;
}

HessianRecovery recover_hessian(const TriMesh& mesh, const std::vector<double>& u) {
    const auto& nbrs = mesh.vertex_neighbors();
    const int nv = mesh.n_vertices();

    HessianRecovery out;
    out.hessians.assign(static_cast<std::size_t>(nv), Mat2::zero());

    std::vector<Vec2> pts;
    std::vector<double> vals;
    for (int v = 0; v < nv; ++v) {
        std::set<int> patch = {v};
        bool done = false;
        for (int ring = 0; ring < 3 && !done; ++ring) {
            std::set<int> widened = patch;
            for (int w : patch)
                for (int nb : nbrs[static_cast<std::size_t>(w)]) widened.insert(nb);
            patch.swap(widened);
            if (patch.size() < 6) continue;

            pts.clear();
            vals.clear();
            for (int w : patch) {
                pts.push_back(mesh.vertices[static_cast<std::size_t>(w)]);
                vals.push_back(u[static_cast<std::size_t>(w)]);
            }
            Mat2 h;
            if (fit_quadratic_hessian(pts, vals, mesh.vertices[static_cast<std::size_t>(v)], h)) {
                out.hessians[static_cast<std::size_t>(v)] = h;
                done = true;
            }
        }
        if (!done) out.fallback_count++;  // zero Hessian stays in place
    }
    return out;
}

Mat2 metric_tensor(const Mat2& h) {
    const SymEigen2 e = sym_eigen(h);
    const double l1 = 1.0 + std::abs(e.lam1);
    const double l2 = 1.0 + std::abs(e.lam2);
    const double scale = std::pow(l1 * l2, -1.0 / 6.0);
    return sym_from_eigen(e, scale * l1, scale * l2);
}

void element_metric(const TriMesh& mesh, const std::vector<Mat2>& vertex_tensors,
                    std::vector<Mat2>& element_tensors, double& sigma_h) {
    const int ne = mesh.n_elements();
    element_tensors.assign(static_cast<std::size_t>(ne), Mat2::zero());
    sigma_h = 0.0;
    for (int k = 0; k < ne; ++k) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const Mat2 mk = (vertex_tensors[static_cast<std::size_t>(tri[0])] +
                         vertex_tensors[static_cast<std::size_t>(tri[1])] +
                         vertex_tensors[static_cast<std::size_t>(tri[2])]) * (1.0 / 3.0);
        element_tensors[static_cast<std::size_t>(k)] = mk;
        sigma_h += mesh.signed_area(k) * std::sqrt(mk.det());
    }
}

MetricField build_metric(const TriMesh& mesh, const std::vector<double>& u) {
    MetricField field;
    const HessianRecovery rec = recover_hessian(mesh, u);
    field.vertex_tensors.reserve(rec.hessians.size());
    for (const auto& h : rec.hessians) field.vertex_tensors.push_back(metric_tensor(h));
    element_metric(mesh, field.vertex_tensors, field.element_tensors, field.sigma_h);
    return field;
}

double equidistribution_quality(const TriMesh& mesh, const MetricField& metric) {
    const double target = metric.sigma_h / mesh.n_elements();
    double worst = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const double v = mesh.signed_area(k) *
                         std::sqrt(metric.element_tensors[static_cast<std::size_t>(k)].det());
        worst = std::max(worst, v / target);
    }
    return worst;
}

}  // namespace mmsupg
