#ifndef MMSUPG_MMPDE_HPP
#define MMSUPG_MMPDE_HPP

#include <vector>

#include "mmsupg/mesh.hpp"
#include "mmsupg/metric.hpp"

namespace mmsupg {

struct MmpdeConfig {
    double alpha = 1.0 / 3.0;  // functional balance, in (0, 1/2]
    double p = 1.5;            // functional exponent, > 1
    double gamma = 0.1;        // mesh time scale
    int sub_steps = 2;         // pseudo-time steps per call
    double d_tau = 0.0;        // pseudo-time step; 0 = automatic

    void validate() const;
};

// Mesh-energy functional
//   I = sum_K |K| [ alpha sqrt(det M_K) tr(J M_K^{-1} J^T)^p
//                   + (1-2 alpha) 2^p sqrt(det M_K) (det J / sqrt(det M_K))^p ]
// with J = (F_K')^{-1} relative to the unit-area equilateral reference.
double energy(const TriMesh& mesh, const std::vector<Mat2>& element_tensors,
              const MmpdeConfig& cfg);

// Analytic dI/dx_i per vertex (element tensors held fixed), zeroed at corner
// vertices and tangentially projected at non-corner boundary vertices.
std::vector<Vec2> energy_gradient(const TriMesh& mesh, const std::vector<Mat2>& element_tensors,
                                  const MmpdeConfig& cfg);

// Gradient-flow relocation x_i <- x_i - d_tau (P_i / gamma) dI/dx_i with
// P_i = det(M(x_i))^{(p-1)/2}, repeated cfg.sub_steps times.  Sub-steps that
// invert an element or increase the energy are halved and retried (up to 20
// halvings; AdaptationFailure beyond that).  Boundary vertices slide along
// their side, corners stay fixed, and the energy never increases across the
// call.
TriMesh mmpde_step(const TriMesh& mesh, const MetricField& metric, const MmpdeConfig& cfg);

// Linear interpolation of a nodal field onto a (possibly moved) mesh; walk
// search with brute-force fallback, clamping points outside by at most 1e-9.
std::vector<double> interpolate(const TriMesh& old_mesh, const std::vector<double>& u_old,
                                const TriMesh& new_mesh);

}  // namespace mmsupg

#endif
