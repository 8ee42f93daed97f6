#ifndef MMSUPG_PROBLEMS_HPP
#define MMSUPG_PROBLEMS_HPP

#include <functional>
#include <string>

#include "mmsupg/geometry.hpp"

namespace mmsupg {

enum class BcKind {
    DirichletFromExact,
    InflowDirichletZeroOutflowNeumann,
    DirichletZero,
};

enum class Example3Flow { Constant, TimeDependent };

// A benchmark definition: flow field with analytic Jacobian, diffusivity,
// source, boundary-condition type, initial condition, and (when available)
// the exact solution with its gradient.
struct ProblemSpec {
    std::string name;
    std::function<Vec2(double, double, double)> b;           // (x,y,t)
    std::function<Mat2(double, double, double)> b_jacobian;  // d b_i / d x_j
    double eps = 0.0;
    std::function<double(double, double, double)> f;
    BcKind bc = BcKind::DirichletZero;
    std::function<double(double, double)> u0;
    bool has_exact = false;
    std::function<double(double, double, double)> exact;
    std::function<Vec2(double, double, double)> exact_grad;
};

// Traveling layer u = (1 + exp(C(x+y-t)))^{-1} with b = (1,1); Dirichlet
// data from the exact solution on the whole boundary.
ProblemSpec example1(double c, double eps);

// Cylinder of radius 0.2 at (0.25,0.25) convected by b = (1, 0.7002075);
// zero Dirichlet on the inflow boundary, homogeneous Neumann on outflow.
ProblemSpec example2(double eps = 1e-4);

// Oscillating interior-layer hill with homogeneous Dirichlet data; flow is
// either b = (2,3) or the time-dependent b = (y-t, x-t).
ProblemSpec example3(Example3Flow flow, double eps);

}  // namespace mmsupg

#endif
