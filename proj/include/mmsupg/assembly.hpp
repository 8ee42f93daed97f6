#ifndef MMSUPG_ASSEMBLY_HPP
#define MMSUPG_ASSEMBLY_HPP

#include <utility>
#include <vector>

#include "mmsupg/mesh.hpp"
#include "mmsupg/problems.hpp"
#include "mmsupg/sparse.hpp"

namespace mmsupg {

// Element Peclet number ||b||_inf diam / (2 eps).  Returns +inf for eps = 0
// with b_inf > 0, and 0 for b_inf = 0.
double peclet(double diam, double b_inf, double eps);

// tau = (diam / ||b||_inf) min{1, Pe/3}; 0 when ||b||_inf = 0.
double tau(double diam, double b_inf, double eps);

struct StabilizationParams {
    bool enabled = false;
    std::vector<double> tau;     // per element
    std::vector<double> peclet;  // per element
    std::vector<double> b_inf;   // per element, max |b| over quadrature points
};

StabilizationParams compute_stabilization(const TriMesh& mesh, const ProblemSpec& problem,
                                          double t, bool enabled);

struct AssembledSystem {
    SparseMatrix mass;      // M (with SUPG perturbation when enabled)
    SparseMatrix opr;       // A(t)
    std::vector<double> load;  // f(t)
    std::vector<std::pair<int, double>> dirichlet_nodes;  // (vertex, boundary value at t)
};

// Assembles
//   M_ij = (phi_j, phi_i)       + sum_K tau_K (phi_j, b.grad phi_i)_K
//   A_ij = (b.grad phi_j, phi_i) + eps (grad phi_j, grad phi_i)
//        + sum_K tau_K [ (b.grad phi_j, b.grad phi_i)_K
//                        + eps (grad phi_j, grad(b.grad phi_i))_K ]
//   f_i  = (f, phi_i)           + sum_K tau_K (f, b.grad phi_i)_K
// with the tau sums present only when supg is on.  grad(b.grad phi_i) is
// (grad b)^T grad phi_i via the problem's analytic flow Jacobian; the
// eps lap(u_h) part of the residual is identically zero for linears.
AssembledSystem assemble(const TriMesh& mesh, const ProblemSpec& problem, double t, bool supg);

// Row replacement for Dirichlet nodes on the combined time-stepping system:
// stored off-diagonal entries of each Dirichlet row are zeroed (pattern kept),
// the diagonal is set to 1 and the rhs entry to the boundary value.
void apply_dirichlet(SparseMatrix& combined, std::vector<double>& rhs,
                     const std::vector<std::pair<int, double>>& dirichlet_nodes);

}  // namespace mmsupg

#endif
