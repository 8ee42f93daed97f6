#include "mmsupg/validate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mmsupg/assembly.hpp"
#include "mmsupg/mmpde.hpp"
#include "mmsupg/problems.hpp"
#include "mmsupg/timestepper.hpp"

namespace mmsupg {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

ValidationCheck make(const std::string& name, bool ok, const std::string& detail) {
    return {name, ok, detail};
}

// ---- small deterministic random helpers ------------------------------------

double uniform(std::mt19937& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng()) / static_cast<double>(std::mt19937::max()));
}

// Uniform mesh with interior vertices jittered; jitter small enough to keep
// every element valid.
TriMesh perturbed_mesh(int n, std::mt19937& rng, double amplitude) {
    TriMesh mesh = generate_uniform(n);
    const double h = 1.0 / n;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (mesh.vertex_flags[static_cast<std::size_t>(v)] != VertexKind::Interior) continue;
        mesh.vertices[static_cast<std::size_t>(v)].x += amplitude * h * uniform(rng, -1.0, 1.0);
        mesh.vertices[static_cast<std::size_t>(v)].y += amplitude * h * uniform(rng, -1.0, 1.0);
    }
    mesh.validate(true);
    return mesh;
}

Mat2 random_spd(std::mt19937& rng) {
    const double angle = uniform(rng, 0.0, 3.141592653589793);
    const double l1 = std::exp(uniform(rng, -0.5, 2.5));
    const double l2 = std::exp(uniform(rng, -0.5, 2.5));
    const double c = std::cos(angle), s = std::sin(angle);
    return {l1 * c * c + l2 * s * s, (l1 - l2) * c * s,
            (l1 - l2) * c * s, l1 * s * s + l2 * c * c};
}

// 4th order central differences of a scalar callback
double fd_derivative(const std::function<double(double)>& g, double x, double h) {
    return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

double fd_second(const std::function<double(double)>& g, double x, double h) {
    return (-g(x + 2 * h) + 16 * g(x + h) - 30 * g(x) + 16 * g(x - h) - g(x - 2 * h)) /
           (12 * h * h);
}

}  // namespace

ValidationCheck check_stabilization_values() {
    bool ok = true;
    std::string detail;

    // hand values, exact to machine precision
    const double pe1 = peclet(0.1, 1.0, 1e-4);
    if (pe1 != 0.1 * 1.0 / (2.0 * 1e-4)) ok = false;
    const double pe2 = peclet(0.01, 2.0, 0.1);
    if (pe2 != 2.0 * 0.01 / (2.0 * 0.1)) ok = false;
    if (!std::isinf(peclet(0.1, 1.0, 0.0))) ok = false;
    if (peclet(0.1, 0.0, 1e-4) != 0.0) ok = false;

    const double t1 = tau(0.1, 1.0, 1e-4);  // Pe = 500 > 3 -> xi = 1
    if (t1 != 0.1) ok = false;
    const double t2 = tau(0.1, 1.0, 0.1);  // Pe = 0.5 -> xi = Pe/3
    if (t2 != (0.1 / 1.0) * ((0.1 * 1.0 / (2.0 * 0.1)) / 3.0)) ok = false;
    if (tau(0.1, 0.0, 1e-4) != 0.0) ok = false;
    const double t0 = tau(0.25, 2.0, 0.0);  // eps = 0 -> xi = 1
    if (t0 != 0.25 / 2.0) ok = false;

    detail = "Pe(0.1,1,1e-4)=" + fmt(pe1) + " tau=" + fmt(t1) + ", tau(Pe=0.5)=" + fmt(t2);
    return make("stabilization unit values", ok, detail);
}

ValidationCheck check_metric_values() {
    bool ok = true;
    const Mat2 m0 = metric_tensor(Mat2::zero());
    ok = ok && std::abs(m0.a - 1.0) < 1e-14 && std::abs(m0.d - 1.0) < 1e-14 &&
         std::abs(m0.b) < 1e-14;

    const Mat2 m1 = metric_tensor(Mat2(7.0, 0.0, 0.0, 0.0));
    const double e1 = std::pow(2.0, 2.5);        // 8^{5/6}
    const double e2 = 1.0 / std::sqrt(2.0);      // 8^{-1/6}
    ok = ok && std::abs(m1.a - e1) < 1e-12 && std::abs(m1.d - e2) < 1e-12 && std::abs(m1.b) < 1e-12;

    const Mat2 m2 = metric_tensor(Mat2(-7.0, 0.0, 0.0, 0.0));
    ok = ok && std::abs(m2.a - e1) < 1e-12 && std::abs(m2.d - e2) < 1e-12;

    return make("metric tensor hand values", ok,
                "M(diag(7,0)) = diag(" + fmt(m1.a) + "," + fmt(m1.d) + ")");
}

ValidationCheck check_energy_reference_value() {
    // one element congruent to the unit-area equilateral reference
    const double side = 2.0 / std::pow(3.0, 0.25);
    TriMesh mesh;
    mesh.vertices = {{0.0, 0.0}, {side, 0.0}, {0.5 * side, 0.5 * side * std::sqrt(3.0)}};
    mesh.triangles = {{0, 1, 2}};
    mesh.vertex_flags.assign(3, VertexKind::Interior);
    mesh.vertex_sides.assign(3, Side::None);

    MmpdeConfig cfg;
    const double value = energy(mesh, {Mat2::identity()}, cfg);
    const double expected = (2.0 / 3.0) * std::pow(2.0, 1.5);  // 1.8856180831641267
    const bool ok = std::abs(value - expected) < 1e-12;

    // alpha = 1/2 kills the second term
    MmpdeConfig half = cfg;
    half.alpha = 0.5;
    const double v_half = energy(mesh, {Mat2::identity()}, half);
    const bool ok2 = std::abs(v_half - 0.5 * std::pow(2.0, 1.5)) < 1e-12;

    return make("energy reference value", ok && ok2,
                "I = " + fmt(value) + " (expected " + fmt(expected) + ")");
}

ValidationCheck check_gradient_fd_oracle() {
    std::mt19937 rng(20240215);
    MmpdeConfig cfg;
    double worst = 0.0;
    int instances = 0;

    for (int trial = 0; trial < 22; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);  // N = 2 n^2 in {8,...,50}
        TriMesh mesh = perturbed_mesh(n, rng, 0.25);

        std::vector<Mat2> vertex_tensors(mesh.vertices.size());
        for (auto& m : vertex_tensors) m = random_spd(rng);
        std::vector<Mat2> element_tensors;
        double sigma_h = 0.0;
        element_metric(mesh, vertex_tensors, element_tensors, sigma_h);

        const std::vector<Vec2> analytic = energy_gradient(mesh, element_tensors, cfg);

        double scale = 0.0;
        for (const auto& g : analytic) scale = std::max(scale, g.norm());

        const double h = 1e-6;
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            const VertexKind kind = mesh.vertex_flags[static_cast<std::size_t>(v)];
            if (kind == VertexKind::Corner) continue;
            const Side side = mesh.vertex_sides[static_cast<std::size_t>(v)];
            for (int c = 0; c < 2; ++c) {
                // only differentiate along admissible directions
                if (kind == VertexKind::BoundaryEdge) {
                    const bool tangential = (side == Side::Bottom || side == Side::Top) ? (c == 0)
                                                                                        : (c == 1);
                    if (!tangential) continue;
                }
                auto eval = [&](double coord) {
                    TriMesh probe = mesh;
                    if (c == 0)
                        probe.vertices[static_cast<std::size_t>(v)].x = coord;
                    else
                        probe.vertices[static_cast<std::size_t>(v)].y = coord;
                    return energy(probe, element_tensors, cfg);
                };
                const double base = (c == 0) ? mesh.vertices[static_cast<std::size_t>(v)].x
                                             : mesh.vertices[static_cast<std::size_t>(v)].y;
                const double fd = (eval(base + h) - eval(base - h)) / (2.0 * h);
                const double an = (c == 0) ? analytic[static_cast<std::size_t>(v)].x
                                           : analytic[static_cast<std::size_t>(v)].y;
                worst = std::max(worst, std::abs(fd - an) / std::max(scale, 1e-12));
            }
        }
        ++instances;
    }
    const bool ok = worst <= 1e-5 && instances >= 20;
    return make("mmpde gradient vs finite differences", ok,
                fmt(static_cast<double>(instances)) + " instances, worst relative " + fmt(worst));
}

namespace {

// FD application of u_t + b.grad u - eps lap u to the exact solution
double fd_operator(const ProblemSpec& p, double x, double y, double t, double h) {
    const double ut = fd_derivative([&](double s) { return p.exact(x, y, s); }, t, h);
    const double ux = fd_derivative([&](double s) { return p.exact(s, y, t); }, x, h);
    const double uy = fd_derivative([&](double s) { return p.exact(x, s, t); }, y, h);
    const double uxx = fd_second([&](double s) { return p.exact(s, y, t); }, x, h);
    const double uyy = fd_second([&](double s) { return p.exact(x, s, t); }, y, h);
    const Vec2 b = p.b(x, y, t);
    return ut + b.x * ux + b.y * uy - p.eps * (uxx + uyy);
}

struct SourceCase {
    ProblemSpec problem;
    std::function<Vec2(std::mt19937&)> sample;  // point selector
    double t_lo, t_hi;
    double h;
    int count;
};

bool run_source_case(const SourceCase& c, std::mt19937& rng, double& worst) {
    int accepted = 0;
    int guard = 0;
    while (accepted < c.count && guard < 100 * c.count) {
        ++guard;
        const Vec2 pt = c.sample(rng);
        const double t = uniform(rng, c.t_lo, c.t_hi);
        const double fa = c.problem.f(pt.x, pt.y, t);
        if (std::abs(fa) < 1e-2) continue;  // keep the relative comparison well-posed
        const double fd = fd_operator(c.problem, pt.x, pt.y, t, c.h);
        const double rel = std::abs(fa - fd) / std::abs(fd);
        worst = std::max(worst, rel);
        ++accepted;
    }
    return accepted == c.count;
}

}  // namespace

ValidationCheck check_manufactured_sources() {
    std::mt19937 rng(77001);
    double worst = 0.0;
    bool filled = true;

    // Example 1, smooth FD regime
    {
        SourceCase c;
        c.problem = example1(8.0, 1e-2);
        c.sample = [](std::mt19937& r) {
            return Vec2(uniform(r, 0.1, 0.9), uniform(r, 0.1, 0.9));
        };
        c.t_lo = 0.05;
        c.t_hi = 0.5;
        c.h = 1e-3;
        c.count = 50;
        filled = run_source_case(c, rng, worst) && filled;
    }
    // Example 1, paper parameters near (but off) the layer center
    {
        SourceCase c;
        c.problem = example1(100.0, 1e-4);
        c.sample = [](std::mt19937& r) {
            // points with |x+y-t| in [0.02, 0.08] at t = 0.5 (z in [2,8])
            while (true) {
                const double x = uniform(r, 0.05, 0.53);
                const double offset = uniform(r, 0.02, 0.08) * (r() % 2 ? 1.0 : -1.0);
                const double y = 0.5 + offset - x;
                if (y > 0.05 && y < 0.95) return Vec2(x, y);
            }
        };
        c.t_lo = 0.5;
        c.t_hi = 0.5;
        c.h = 2.5e-4;
        c.count = 50;
        filled = run_source_case(c, rng, worst) && filled;
    }
    // Example 3, smooth FD regime
    {
        SourceCase c;
        c.problem = example3(Example3Flow::Constant, 1e-2);
        c.sample = [](std::mt19937& r) {
            return Vec2(uniform(r, 0.08, 0.92), uniform(r, 0.08, 0.92));
        };
        c.t_lo = 0.05;
        c.t_hi = 0.45;
        c.h = 1e-3;
        c.count = 25;
        filled = run_source_case(c, rng, worst) && filled;
    }
    // Example 3, time-dependent flow
    {
        SourceCase c;
        c.problem = example3(Example3Flow::TimeDependent, 1e-2);
        c.sample = [](std::mt19937& r) {
            return Vec2(uniform(r, 0.08, 0.92), uniform(r, 0.08, 0.92));
        };
        c.t_lo = 0.05;
        c.t_hi = 0.45;
        c.h = 1e-3;
        c.count = 25;
        filled = run_source_case(c, rng, worst) && filled;
    }
    // Example 3, paper eps off the layer ring
    {
        SourceCase c;
        c.problem = example3(Example3Flow::Constant, 1e-6);
        c.sample = [](std::mt19937& r) {
            while (true) {
                const Vec2 p(uniform(r, 0.08, 0.92), uniform(r, 0.08, 0.92));
                const double rr = std::hypot(p.x - 0.5, p.y - 0.5);
                if (std::abs(rr - 0.25) > 0.1) return p;
            }
        };
        c.t_lo = 0.1;
        c.t_hi = 0.45;
        c.h = 2e-4;
        c.count = 50;
        filled = run_source_case(c, rng, worst) && filled;
    }

    const bool ok = filled && worst <= 1e-6;
    return make("manufactured sources vs finite differences", ok, "worst relative " + fmt(worst));
}

ValidationCheck check_exact_gradients() {
    std::mt19937 rng(5150);
    double worst = 0.0;
    const double h = 1e-4;

    const ProblemSpec cases[2] = {example1(8.0, 1e-2), example3(Example3Flow::Constant, 1e-2)};
    for (const auto& p : cases) {
        int accepted = 0;
        int guard = 0;
        while (accepted < 50 && guard < 5000) {
            ++guard;
            const double x = uniform(rng, 0.1, 0.9);
            const double y = uniform(rng, 0.1, 0.9);
            const double t = uniform(rng, 0.05, 0.45);
            const Vec2 g = p.exact_grad(x, y, t);
            if (g.norm() < 1e-2) continue;
            const double gx = fd_derivative([&](double s) { return p.exact(s, y, t); }, x, h);
            const double gy = fd_derivative([&](double s) { return p.exact(x, s, t); }, y, h);
            const double rel = std::hypot(g.x - gx, g.y - gy) / std::hypot(gx, gy);
            worst = std::max(worst, rel);
            ++accepted;
        }
    }
    return make("exact gradients vs finite differences", worst <= 1e-7,
                "worst relative " + fmt(worst));
}

ValidationCheck check_consistency_steady_linear() {
    // steady solution u = x + y with constant flow; exact in the FE space
    ProblemSpec p;
    p.name = "steady-linear";
    p.eps = 1e-4;
    p.b = [](double, double, double) { return Vec2(1.0, 1.0); };
    p.b_jacobian = [](double, double, double) { return Mat2::zero(); };
    p.f = [](double, double, double) { return 2.0; };  // b1 + b2
    p.bc = BcKind::DirichletFromExact;
    p.has_exact = true;
    p.exact = [](double x, double y, double) { return x + y; };
    p.exact_grad = [](double, double, double) { return Vec2(1.0, 1.0); };
    p.u0 = [](double x, double y) { return x + y; };

    double worst = 0.0;
    for (Method m : {Method::FmFem, Method::FmSupg, Method::MmFem, Method::MmSupg}) {
        RunConfig cfg;
        cfg.method = m;
        cfg.n = 8;
        cfg.dt = 0.01;
        cfg.t_final = 1.0;  // 100 steps
        const SolutionState final_state = run_simulation(p, cfg);
        for (int v = 0; v < final_state.mesh.n_vertices(); ++v) {
            const Vec2 pos = final_state.mesh.vertices[static_cast<std::size_t>(v)];
            worst = std::max(worst, std::abs(final_state.u[static_cast<std::size_t>(v)] -
                                             (pos.x + pos.y)));
        }
    }
    return make("steady linear consistency (all methods, 100 steps)", worst <= 1e-8,
                "worst nodal error " + fmt(worst));
}

ValidationCheck check_interpolation_linear() {
    std::mt19937 rng(31337);
    const TriMesh source = perturbed_mesh(9, rng, 0.2);
    std::vector<double> u(source.vertices.size());
    for (std::size_t v = 0; v < source.vertices.size(); ++v)
        u[v] = source.vertices[v].x + 2.0 * source.vertices[v].y;

    const TriMesh target = perturbed_mesh(7, rng, 0.2);
    const std::vector<double> w = interpolate(source, u, target);

    double worst = 0.0;
    for (std::size_t v = 0; v < target.vertices.size(); ++v)
        worst = std::max(worst,
                         std::abs(w[v] - (target.vertices[v].x + 2.0 * target.vertices[v].y)));
    return make("interpolation reproduces linears", worst <= 1e-12, "worst error " + fmt(worst));
}

ValidationCheck check_solver_roundtrip() {
    std::mt19937 rng(424242);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 20 + static_cast<int>(rng() % 180);
        Triplets t;
        for (int i = 0; i < n; ++i) {
            t.add(i, i, 4.0 + uniform(rng, 0.0, 1.0));
            if (i > 0) t.add(i, i - 1, uniform(rng, -1.0, 1.0));
            if (i + 1 < n) t.add(i, i + 1, uniform(rng, -1.0, 1.0));
            t.add(i, static_cast<int>(rng() % n), uniform(rng, -0.5, 0.5));
        }
        const SparseMatrix a = compress(t, n, n);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = uniform(rng, -2.0, 2.0);
        const std::vector<double> b = matvec(a, x);
        const std::vector<double> xs = solve(a, b);
        double norm = 0.0, diff = 0.0;
        for (int i = 0; i < n; ++i) {
            norm = std::max(norm, std::abs(x[static_cast<std::size_t>(i)]));
            diff = std::max(diff, std::abs(x[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i)]));
        }
        worst = std::max(worst, diff / norm);
    }
    return make("solve recovers matvec inputs", worst <= 1e-8, "worst relative " + fmt(worst));
}

ValidationReport run_validation() {
    ValidationReport report;
    report.checks.push_back(check_stabilization_values());
    report.checks.push_back(check_metric_values());
    report.checks.push_back(check_energy_reference_value());
    report.checks.push_back(check_solver_roundtrip());
    report.checks.push_back(check_interpolation_linear());
    report.checks.push_back(check_exact_gradients());
    report.checks.push_back(check_manufactured_sources());
    report.checks.push_back(check_gradient_fd_oracle());
    report.checks.push_back(check_consistency_steady_linear());
    return report;
}

}  // namespace mmsupg
