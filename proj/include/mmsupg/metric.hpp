#ifndef MMSUPG_METRIC_HPP
#define MMSUPG_METRIC_HPP

#include <vector>

#include "mmsupg/mesh.hpp"

namespace mmsupg {

// Per-vertex SPD tensors with their element (volume) averages.
struct MetricField {
    std::vector<Mat2> vertex_tensors;
    std::vector<Mat2> element_tensors;
    double sigma_h = 0.0;  // sum_K |K| sqrt(det M_K)
};

struct HessianRecovery {
    std::vector<Mat2> hessians;  // symmetric, per vertex
    int fallback_count = 0;      // vertices where the LS fit was rank-deficient
};

// Least-squares fit of a full quadratic over the vertex patch (vertex +
// edge neighbors, widened ring by ring while fewer than 6 points or rank
// deficient); Hessian of the fitted quadratic.  Rank-deficient patches fall
// back to a zero Hessian and are counted.
HessianRecovery recover_hessian(const TriMesh& mesh, const std::vector<double>& u);

// M = det(I + |H|)^{-1/6} (I + |H|), |H| from the eigen-decomposition of H.
Mat2 metric_tensor(const Mat2& h);

// Element averages M_K (arithmetic mean of the three vertex tensors) and
// sigma_h = sum_K |K| sqrt(det M_K).
void element_metric(const TriMesh& mesh, const std::vector<Mat2>& vertex_tensors,
                    std::vector<Mat2>& element_tensors, double& sigma_h);

// Convenience: Hessian recovery + vertex metric + element averages.
MetricField build_metric(const TriMesh& mesh, const std::vector<double>& u);

// Equidistribution quality max_K |K| sqrt(det M_K) / (sigma_h / N).
double equidistribution_quality(const TriMesh& mesh, const MetricField& metric);

// Exposed for direct testing: fit a quadratic through (points, values) by
// least squares and return its Hessian; false when the patch is rank
// deficient (e.g. collinear points).
bool fit_quadratic_hessian(const std::vector<Vec2>& points, const std::vector<double>& values,
                           const Vec2& center, Mat2& hessian);

}  // namespace mmsupg

#endif
