#ifndef MMSUPG_TIMESTEPPER_HPP
#define MMSUPG_TIMESTEPPER_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mmsupg/assembly.hpp"
#include "mmsupg/mmpde.hpp"
#include "mmsupg/problems.hpp"

namespace mmsupg {

enum class Method { FmFem, FmSupg, MmFem, MmSupg };

bool method_is_moving(Method m);
bool method_uses_supg(Method m);
std::string method_name(Method m);
Method method_from_name(const std::string& name);  // throws invalid_argument

struct RunConfig {
    Method method = Method::FmSupg;
    int n = 16;              // cells per side; N = 2 n^2 elements
    double dt = 1e-3;
    double t_final = 0.5;
    double theta = 0.5;
    MmpdeConfig mmpde;
    int init_adapt_cycles = 5;  // initial adaptation rounds for MM methods
    int output_every = 0;       // observer cadence hint used by the CLI

    long long n_steps() const;
    void validate() const;  // throws invalid_argument
};

struct SolutionState {
    TriMesh mesh;
    std::vector<double> u;
    double t = 0.0;
};

// One theta-scheme level:
//   (M/dt + theta A^{m+1}) u^{m+1}
//     = theta f^{m+1} + (1-theta) f^m + (M/dt - (1-theta) A^m) u^m
// Dirichlet rows of the combined system are imposed from dirichlet before
// the solve.
std::vector<double> theta_step(const SparseMatrix& mass, const SparseMatrix& a_m,
                               const SparseMatrix& a_mp1, const std::vector<double>& f_m,
                               const std::vector<double>& f_mp1, const std::vector<double>& u_m,
                               double dt, double theta,
                               const std::vector<std::pair<int, double>>& dirichlet = {});

// Called with the state at t = 0 (step 0) and after every completed step.
using StepObserver = std::function<void(const SolutionState&, long long step)>;

// Time loop with the alternating strategy for moving-mesh methods: per step
// recover the Hessian of the current solution, build the metric, advance the
// mesh, interpolate, then assemble and take a theta step.  Fixed-mesh
// methods skip the mesh stages.  Moving-mesh methods run
// cfg.init_adapt_cycles rounds of initial adaptation, re-evaluating u0
// analytically after each round.
SolutionState run_simulation(const ProblemSpec& problem, const RunConfig& cfg,
                             const StepObserver& observer = {});

}  // namespace mmsupg

#endif
