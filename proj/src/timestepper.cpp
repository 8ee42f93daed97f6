#include "mmsupg/timestepper.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "mmsupg/errors.hpp"
#include "mmsupg/norms.hpp"

namespace mmsupg {

bool method_is_moving(Method m) { return m == Method::MmFem || m == Method::MmSupg; }
bool method_uses_supg(Method m) { return m == Method::FmSupg || m == Method::MmSupg; }

std::string method_name(Method m) {
    switch (m) {
        case Method::FmFem: return "FM-FEM";
        case Method::FmSupg: return "FM-SUPG";
        case Method::MmFem: return "MM-FEM";
        case Method::MmSupg: return "MM-SUPG";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(c)));
    if (s == "fm-fem") return Method::FmFem;
    if (s == "fm-supg") return Method::FmSupg;
    if (s == "mm-fem") return Method::MmFem;
    if (s == "mm-supg") return Method::MmSupg;
    throw std::invalid_argument("unknown method '" + name + "'");
}

long long RunConfig::n_steps() const { return std::llround(t_final / dt); }

void RunConfig::validate() const {
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("run: theta must be in [0,1]");
    if (!(dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (!(t_final >= dt)) throw std::invalid_argument("run: T must be at least dt");
    if (n < 1) throw std::invalid_argument("run: n must be >= 1");
    if (init_adapt_cycles < 0) throw std::invalid_argument("run: init_adapt_cycles must be >= 0");
    const double steps = t_final / dt;
    if (std::abs(steps - static_cast<double>(n_steps())) > 0.5)
        throw std::invalid_argument("run: T/dt must be close to an integer (fixed step)");
    mmpde.validate();
}

std::vector<double> theta_step(const SparseMatrix& mass, const SparseMatrix& a_m,
                               const SparseMatrix& a_mp1, const std::vector<double>& f_m,
                               const std::vector<double>& f_mp1, const std::vector<double>& u_m,
                               double dt, double theta,
                               const std::vector<std::pair<int, double>>& dirichlet) {
    const int n = mass.n_rows;
    if (a_m.n_rows != n || a_mp1.n_rows != n || static_cast<int>(u_m.size()) != n ||
        static_cast<int>(f_m.size()) != n || static_cast<int>(f_mp1.size()) != n)
        throw std::invalid_argument("theta_step: dimension mismatch");

    // combined matrix M/dt + theta A^{m+1}
    Triplets combined_t;
    for (int i = 0; i < n; ++i) {
        for (int k = mass.row_offsets[static_cast<std::size_t>(i)]; k < mass.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            combined_t.add(i, mass.col_indices[static_cast<std::size_t>(k)], mass.values[static_cast<std::size_t>(k)] / dt);
        for (int k = a_mp1.row_offsets[static_cast<std::size_t>(i)]; k < a_mp1.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            combined_t.add(i, a_mp1.col_indices[static_cast<std::size_t>(k)], theta * a_mp1.values[static_cast<std::size_t>(k)]);
    }
    SparseMatrix combined = compress(combined_t, n, n);

    // rhs = theta f^{m+1} + (1-theta) f^m + (M/dt - (1-theta) A^m) u^m
    const std::vector<double> mu = matvec(mass, u_m);
    const std::vector<double> au = matvec(a_m, u_m);
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t si = static_cast<std::size_t>(i);
        rhs[si] = theta * f_mp1[si] + (1.0 - theta) * f_m[si] + mu[si] / dt - (1.0 - theta) * au[si];
    }

    apply_dirichlet(combined, rhs, dirichlet);
    return solve(combined, rhs);
}

namespace {

std::vector<double> sample_initial_condition(const TriMesh& mesh, const ProblemSpec& problem) {
    std::vector<double> u(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        u[v] = problem.u0(mesh.vertices[v].x, mesh.vertices[v].y);
    return u;
}

}  // namespace

SolutionState run_simulation(const ProblemSpec& problem, const RunConfig& cfg,
                             const StepObserver& observer) {
    cfg.validate();
    const bool moving = method_is_moving(cfg.method);
    const bool supg = method_uses_supg(cfg.method);

    SolutionState state;
    state.mesh = generate_uniform(cfg.n);
    state.u = sample_initial_condition(state.mesh, problem);
    state.t = 0.0;

    if (moving) {
        // initial adaptation: the mesh responds to u0, and u0 is re-evaluated
        // from its analytic definition after each round
        for (int cycle = 0; cycle < cfg.init_adapt_cycles; ++cycle) {
            const MetricField metric = build_metric(state.mesh, state.u);
            state.mesh = mmpde_step(state.mesh, metric, cfg.mmpde);
            state.u = sample_initial_condition(state.mesh, problem);
        }
    }

    if (observer) observer(state, 0);

    const long long n_steps = cfg.n_steps();
    AssembledSystem sys_m;
    bool have_sys_m = false;

    for (long long m = 0; m < n_steps; ++m) {
        const double t_m = static_cast<double>(m) * cfg.dt;
        const double t_mp1 = static_cast<double>(m + 1) * cfg.dt;

        if (moving) {
            const MetricField metric = build_metric(state.mesh, state.u);
            TriMesh moved;
            try {
                moved = mmpde_step(state.mesh, metric, cfg.mmpde);
            } catch (const AdaptationFailure& e) {
                throw AdaptationFailure(std::string(e.what()) + " at step " + std::to_string(m),
                                        static_cast<int>(m));
            }
            state.u = interpolate(state.mesh, state.u, moved);
            state.mesh = std::move(moved);
            have_sys_m = false;  // mesh changed, cached operator invalid
        }

        if (!have_sys_m) sys_m = assemble(state.mesh, problem, t_m, supg);
        AssembledSystem sys_mp1 = assemble(state.mesh, problem, t_mp1, supg);

        // M carries the SUPG perturbation of the new time level
        state.u = theta_step(sys_mp1.mass, sys_m.opr, sys_mp1.opr, sys_m.load, sys_mp1.load,
                             state.u, cfg.dt, cfg.theta, sys_mp1.dirichlet_nodes);
        state.t = t_mp1;

        if (!moving) {
            sys_m = std::move(sys_mp1);
            have_sys_m = true;
        }

        if (observer) observer(state, m + 1);
    }
    return state;
}

}  // namespace mmsupg
