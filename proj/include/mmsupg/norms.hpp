#ifndef MMSUPG_NORMS_HPP
#define MMSUPG_NORMS_HPP

#include <functional>
#include <vector>

#include "mmsupg/mesh.hpp"

namespace mmsupg {

struct NormReport {
    double h1_semi = 0.0;
    double l2 = 0.0;
    bool against_exact = false;
    double t = 0.0;
    int n_elements = 0;
};

// sqrt( sum_K int_K |grad u_h - grad u(.,t)|^2 ) with a 6-point degree-4 rule.
double h1_seminorm_error(const TriMesh& mesh, const std::vector<double>& u,
                         const std::function<Vec2(double, double, double)>& exact_grad, double t);

// Discrete H1 seminorm sqrt( sum_K |K| |grad u_h|^2 ), exact for linears.
double h1_seminorm(const TriMesh& mesh, const std::vector<double>& u);

// L2 error via the same degree-4 rule.
double l2_error(const TriMesh& mesh, const std::vector<double>& u,
                const std::function<double(double, double, double)>& exact, double t);

}  // namespace mmsupg

#endif
