#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mmsupg/assembly.hpp"
#include "mmsupg/timestepper.hpp"
#include "mmsupg/validate.hpp"

using namespace mmsupg;

namespace {

TriMesh unit_right_triangle() {
    TriMesh m;
    m.vertices = {{0, 0}, {1, 0}, {0, 1}};
    m.triangles = {{0, 1, 2}};
    m.vertex_flags.assign(3, VertexKind::Interior);
    m.vertex_sides.assign(3, Side::None);
    return m;
}

ProblemSpec constant_flow_problem(Vec2 b, double eps) {
    ProblemSpec p;
    p.name = "test";
    p.eps = eps;
    p.bc = BcKind::DirichletZero;
    p.b = [b](double, double, double) { return b; };
    p.b_jacobian = [](double, double, double) { return Mat2::zero(); };
    p.f = [](double, double, double) { return 0.0; };
    p.u0 = [](double, double) { return 0.0; };
    return p;
}

double entry(const SparseMatrix& m, int i, int j) {
    const double* p = m.find(i, j);
    return p ? *p : 0.0;
}

}  // namespace

TEST_CASE("peclet and tau hand values are exact") {
    // machine-precision identities, including the eps = 0 branch
    CHECK(peclet(0.1, 1.0, 1e-4) == 0.1 * 1.0 / (2.0 * 1e-4));
    CHECK(peclet(0.1, 1.0, 1e-4) == doctest::Approx(500.0).epsilon(1e-15));
    CHECK(peclet(0.01, 2.0, 0.1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(std::isinf(peclet(0.1, 1.0, 0.0)));
    CHECK(peclet(0.1, 0.0, 0.0) == 0.0);

    CHECK(tau(0.1, 1.0, 1e-4) == 0.1);  // Pe = 500 -> xi = 1
    CHECK(tau(0.1, 1.0, 0.1) == (0.1 / 1.0) * ((0.1 / (2.0 * 0.1)) / 3.0));
    CHECK(tau(0.1, 1.0, 0.1) == doctest::Approx(0.0166666666666667).epsilon(1e-12));
    CHECK(tau(0.1, 0.0, 1e-4) == 0.0);
    CHECK(tau(0.5, 2.0, 0.0) == 0.25);  // vanishing diffusivity -> xi = 1

    const ValidationCheck check = check_stabilization_values();
    INFO(check.detail);
    CHECK(check.passed);
}

TEST_CASE("tau monotone in diam and eps") {
    std::mt19937 rng(7);
    auto u01 = [&rng] { return static_cast<double>(rng()) / static_cast<double>(std::mt19937::max()); };
    for (int trial = 0; trial < 200; ++trial) {
        const double b_inf = 0.1 + 3.0 * u01();
        const double d1 = 0.01 + u01();
        const double d2 = d1 * (1.0 + u01());
        const double e1 = 1e-6 + 0.5 * u01();
        const double e2 = e1 * (1.0 + u01());
        CHECK(tau(d2, b_inf, e1) >= tau(d1, b_inf, e1));  // nondecreasing in diam
        CHECK(tau(d1, b_inf, e2) <= tau(d1, b_inf, e1));  // nonincreasing in eps
    }
}

TEST_CASE("galerkin mass block of the unit right triangle") {
    const TriMesh mesh = unit_right_triangle();
    const ProblemSpec p = constant_flow_problem({1.0, 0.0}, 1e-2);
    const AssembledSystem sys = assemble(mesh, p, 0.0, false);

    const double expected[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(entry(sys.mass, i, j) == doctest::Approx(expected[i][j] / 24.0).epsilon(1e-14));
}

TEST_CASE("supg mass increment for b=(1,0)") {
    // phi_0 = 1 - x - y has b.grad phi_0 = -1, so row 0 of the mass gains
    // tau * (-1) * int(phi_j) = -tau/6 in every column
    const TriMesh mesh = unit_right_triangle();
    const double eps = 1e-2;
    const ProblemSpec p = constant_flow_problem({1.0, 0.0}, eps);

    const AssembledSystem gal = assemble(mesh, p, 0.0, false);
    const AssembledSystem supg = assemble(mesh, p, 0.0, true);

    const double tau_k = tau(std::sqrt(2.0), 1.0, eps);
    REQUIRE(tau_k > 0.0);
    for (int j = 0; j < 3; ++j)
        CHECK(entry(supg.mass, 0, j) - entry(gal.mass, 0, j) ==
              doctest::Approx(-tau_k / 6.0).epsilon(1e-13));
}

TEST_CASE("zero source gives zero load with and without supg") {
    const TriMesh mesh = generate_uniform(4);
    const ProblemSpec p = constant_flow_problem({2.0, -1.0}, 0.0);
    for (bool supg : {false, true}) {
        const AssembledSystem sys = assemble(mesh, p, 0.3, supg);
        for (double v : sys.load) CHECK(v == 0.0);
    }
}

TEST_CASE("stabilization params per element") {
    const TriMesh mesh = generate_uniform(4);
    const ProblemSpec p = constant_flow_problem({3.0, 4.0}, 1e-3);
    const StabilizationParams stab = compute_stabilization(mesh, p, 0.0, true);
    REQUIRE(static_cast<int>(stab.tau.size()) == mesh.n_elements());
    for (int k = 0; k < mesh.n_elements(); ++k) {
        CHECK(stab.b_inf[static_cast<std::size_t>(k)] == doctest::Approx(5.0));
        CHECK(stab.tau[static_cast<std::size_t>(k)] ==
              doctest::Approx(tau(diam(mesh, k), 5.0, 1e-3)));
        CHECK(stab.peclet[static_cast<std::size_t>(k)] >= 0.0);
    }
    const StabilizationParams off = compute_stabilization(mesh, p, 0.0, false);
    for (double t : off.tau) CHECK(t == 0.0);
}

TEST_CASE("dirichlet rows for the three boundary condition types") {
    const TriMesh mesh = generate_uniform(4);

    SUBCASE("values from the exact solution") {
        const ProblemSpec p = example1(100.0, 1e-4);
        const AssembledSystem sys = assemble(mesh, p, 0.0, true);
        bool corner_seen = false;
        for (const auto& [node, value] : sys.dirichlet_nodes) {
            if (mesh.vertices[static_cast<std::size_t>(node)].x == 0.0 &&
                mesh.vertices[static_cast<std::size_t>(node)].y == 0.0) {
                corner_seen = true;
                CHECK(value == doctest::Approx(0.5).epsilon(1e-14));  // (1+e^0)^{-1}
            }
        }
        CHECK(corner_seen);
    }

    SUBCASE("inflow nodes pinned to zero, outflow rows untouched") {
        const ProblemSpec p = example2(1e-4);
        const AssembledSystem sys = assemble(mesh, p, 0.0, true);
        // inflow = left and bottom for b = (1, 0.7002075)
        std::vector<bool> dirichlet(static_cast<std::size_t>(mesh.n_vertices()), false);
        for (const auto& [node, value] : sys.dirichlet_nodes) {
            dirichlet[static_cast<std::size_t>(node)] = true;
            CHECK(value == 0.0);
            const Vec2 pos = mesh.vertices[static_cast<std::size_t>(node)];
            CHECK((pos.x == 0.0 || pos.y == 0.0));
        }
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            const Vec2 pos = mesh.vertices[static_cast<std::size_t>(v)];
            if (pos.x == 0.0 || pos.y == 0.0)
                CHECK(dirichlet[static_cast<std::size_t>(v)]);
            else
                CHECK_FALSE(dirichlet[static_cast<std::size_t>(v)]);  // outflow/interior free
        }
    }
}

TEST_CASE("apply_dirichlet replaces rows by identity") {
    Triplets t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.add(i, j, 1.0 + i + j);
    SparseMatrix m = compress(t, 3, 3);
    std::vector<double> rhs = {1.0, 2.0, 3.0};
    apply_dirichlet(m, rhs, {{1, 42.0}});
    CHECK(*m.find(1, 0) == 0.0);
    CHECK(*m.find(1, 1) == 1.0);
    CHECK(*m.find(1, 2) == 0.0);
    CHECK(rhs[1] == 42.0);
    CHECK(*m.find(0, 0) == 2.0);  // other rows untouched
    CHECK(rhs[2] == 3.0);
}

TEST_CASE("partition of unity: mass row sums") {
    const TriMesh mesh = generate_uniform(5);
    const ProblemSpec p = constant_flow_problem({1.0, 2.0}, 1e-3);
    const AssembledSystem sys = assemble(mesh, p, 0.0, false);

    // int phi_v = (1/3) sum of areas of elements containing v
    std::vector<double> phi_integral(static_cast<std::size_t>(mesh.n_vertices()), 0.0);
    for (int k = 0; k < mesh.n_elements(); ++k)
        for (int i : mesh.triangles[static_cast<std::size_t>(k)])
            phi_integral[static_cast<std::size_t>(i)] += mesh.signed_area(k) / 3.0;

    for (int v = 0; v < mesh.n_vertices(); ++v) {
        double row_sum = 0.0;
        for (int k = sys.mass.row_offsets[static_cast<std::size_t>(v)];
             k < sys.mass.row_offsets[static_cast<std::size_t>(v) + 1]; ++k)
            row_sum += sys.mass.values[static_cast<std::size_t>(k)];
        CHECK(row_sum == doctest::Approx(phi_integral[static_cast<std::size_t>(v)]).epsilon(1e-12));
    }
}

TEST_CASE("constant-flow convection rows sum to zero on interior rows") {
    const TriMesh mesh = generate_uniform(5);
    const ProblemSpec p = constant_flow_problem({1.3, -0.4}, 0.0);  // eps 0: operator is pure convection
    const AssembledSystem sys = assemble(mesh, p, 0.0, false);
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (mesh.vertex_flags[static_cast<std::size_t>(v)] != VertexKind::Interior) continue;
        double row_sum = 0.0;
        for (int k = sys.opr.row_offsets[static_cast<std::size_t>(v)];
             k < sys.opr.row_offsets[static_cast<std::size_t>(v) + 1]; ++k)
            row_sum += sys.opr.values[static_cast<std::size_t>(k)];
        CHECK(std::abs(row_sum) < 1e-12);
    }
}

TEST_CASE("supg off equals an independent galerkin assembly") {
    // closed-form oracle for constant b: mass |K|/12 (1+delta_ij),
    // A_ij = (b.grad phi_j) |K|/3 + eps |K| grad_i.grad_j
    std::mt19937 rng(12345);
    auto u01 = [&rng] { return static_cast<double>(rng()) / static_cast<double>(std::mt19937::max()); };

    TriMesh mesh = generate_uniform(4);
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (mesh.vertex_flags[static_cast<std::size_t>(v)] != VertexKind::Interior) continue;
        mesh.vertices[static_cast<std::size_t>(v)].x += 0.05 * (u01() - 0.5);
        mesh.vertices[static_cast<std::size_t>(v)].y += 0.05 * (u01() - 0.5);
    }

    const Vec2 b{0.8, -1.7};
    const double eps = 3e-3;
    const ProblemSpec p = constant_flow_problem(b, eps);
    const AssembledSystem sys = assemble(mesh, p, 0.0, false);

    Triplets mass_t, a_t;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const Vec2 x0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
        const Vec2 x1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
        const Vec2 x2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
        const double area = 0.5 * ((x1.x - x0.x) * (x2.y - x0.y) - (x1.y - x0.y) * (x2.x - x0.x));
        const Vec2 g[3] = {Vec2(x1.y - x2.y, x2.x - x1.x) / (2 * area),
                           Vec2(x2.y - x0.y, x0.x - x2.x) / (2 * area),
                           Vec2(x0.y - x1.y, x1.x - x0.x) / (2 * area)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                mass_t.add(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)],
                           area / 12.0 * (i == j ? 2.0 : 1.0));
                a_t.add(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)],
                        b.dot(g[j]) * area / 3.0 + eps * area * g[i].dot(g[j]));
            }
        }
    }
    const SparseMatrix mass_oracle = compress(mass_t, mesh.n_vertices(), mesh.n_vertices());
    const SparseMatrix a_oracle = compress(a_t, mesh.n_vertices(), mesh.n_vertices());

    REQUIRE(sys.mass.nnz() == mass_oracle.nnz());
    for (int i = 0; i < sys.mass.nnz(); ++i) {
        CHECK(sys.mass.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(mass_oracle.values[static_cast<std::size_t>(i)]).epsilon(1e-13));
        CHECK(sys.opr.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(a_oracle.values[static_cast<std::size_t>(i)]).epsilon(1e-13));
    }
}

TEST_CASE("steady linear solution is exact for the assembled system") {
    // u = x + y solves the steady problem; nodal interpolant satisfies the
    // discrete equations after boundary rows are imposed
    const TriMesh mesh = generate_uniform(6);
    for (bool supg : {false, true}) {
        ProblemSpec p = constant_flow_problem({1.0, 1.0}, 1e-4);
        p.bc = BcKind::DirichletFromExact;
        p.has_exact = true;
        p.exact = [](double x, double y, double) { return x + y; };
        p.exact_grad = [](double, double, double) { return Vec2(1.0, 1.0); };
        p.f = [](double, double, double) { return 2.0; };

        const AssembledSystem sys = assemble(mesh, p, 0.0, supg);
        SparseMatrix a = sys.opr;
        std::vector<double> rhs = sys.load;
        apply_dirichlet(a, rhs, sys.dirichlet_nodes);

        std::vector<double> u(static_cast<std::size_t>(mesh.n_vertices()));
        for (int v = 0; v < mesh.n_vertices(); ++v)
            u[static_cast<std::size_t>(v)] = mesh.vertices[static_cast<std::size_t>(v)].x +
                                             mesh.vertices[static_cast<std::size_t>(v)].y;
        const std::vector<double> au = matvec(a, u);
        for (int i = 0; i < mesh.n_vertices(); ++i)
            CHECK(std::abs(au[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]) <= 1e-10);
    }
}
