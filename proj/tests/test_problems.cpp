#include <cmath>

#include "doctest.h"
#include "mmsupg/problems.hpp"
#include "mmsupg/validate.hpp"

using namespace mmsupg;

TEST_CASE("example1 layer values") {
    const ProblemSpec p = example1(100.0, 1e-4);
    // on the layer x + y = t the solution is 1/2 and f = -C/4 for any eps
    CHECK(p.exact(0.3, 0.2, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.f(0.3, 0.2, 0.5) == doctest::Approx(-25.0).epsilon(1e-12));

    const ProblemSpec q = example1(100.0, 0.3);
    CHECK(q.f(0.1, 0.4, 0.5) == doctest::Approx(-25.0).epsilon(1e-12));

    // far side values saturate without overflow
    CHECK(p.exact(1.0, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(p.exact(0.0, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(std::isfinite(p.f(1.0, 1.0, 0.0)));

    CHECK_THROWS_AS(example1(0.0, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(example1(-5.0, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(example1(100.0, -1.0), std::invalid_argument);
}

TEST_CASE("example2 cylinder initial profile") {
    const ProblemSpec p = example2(1e-4);
    CHECK(p.u0(0.25, 0.25) == 1.0);
    CHECK(p.u0(0.9, 0.9) == 0.0);
    CHECK(p.u0(0.45, 0.25) == 1.0);  // distance exactly 0.2 (non-strict)
    CHECK(p.u0(0.4501, 0.25) == 0.0);
    CHECK(p.f(0.3, 0.8, 0.2) == 0.0);
    CHECK(p.bc == BcKind::InflowDirichletZeroOutflowNeumann);
    CHECK_FALSE(p.has_exact);
}

TEST_CASE("example3 exact solution values") {
    const ProblemSpec p = example3(Example3Flow::Constant, 1e-6);
    for (double x : {0.1, 0.5, 0.77})
        for (double y : {0.2, 0.9}) CHECK(p.exact(x, y, 0.0) == doctest::Approx(0.0));
    CHECK(p.exact(0.0, 0.4, 0.3) == doctest::Approx(0.0));
    CHECK(p.exact(1.0, 0.4, 0.3) == doctest::Approx(0.0));
    CHECK(p.u0(0.3, 0.6) == 0.0);

    // frozen from the independent high-precision evaluation:
    // 16 sin(pi/2) (1/4)(1/4) (1/2 + atan(125)/pi)
    CHECK(p.exact(0.5, 0.5, 0.5) == doctest::Approx(0.99745357523333094).epsilon(1e-14));

    CHECK_THROWS_AS(example3(Example3Flow::Constant, 0.0), std::invalid_argument);
}

TEST_CASE("example3 flows and jacobians") {
    const ProblemSpec c = example3(Example3Flow::Constant, 1e-4);
    CHECK(c.b(0.3, 0.9, 0.2).x == 2.0);
    CHECK(c.b(0.3, 0.9, 0.2).y == 3.0);
    CHECK(c.b_jacobian(0.3, 0.9, 0.2).max_abs() == 0.0);

    const ProblemSpec td = example3(Example3Flow::TimeDependent, 1e-4);
    CHECK(td.b(0.3, 0.9, 0.2).x == doctest::Approx(0.7));   // y - t
    CHECK(td.b(0.3, 0.9, 0.2).y == doctest::Approx(0.1));   // x - t
    const Mat2 j = td.b_jacobian(0.3, 0.9, 0.2);
    CHECK(j.a == 0.0);
    CHECK(j.b == 1.0);
    CHECK(j.c == 1.0);
    CHECK(j.d == 0.0);
}

TEST_CASE("flow fields are divergence free and match their jacobians") {
    const ProblemSpec specs[] = {example1(50.0, 1e-4), example2(0.0),
                                 example3(Example3Flow::Constant, 1e-6),
                                 example3(Example3Flow::TimeDependent, 1e-6)};
    const double h = 1e-6;
    for (const auto& p : specs) {
        for (double x : {0.21, 0.6}) {
            for (double y : {0.13, 0.83}) {
                const double t = 0.37;
                const Mat2 j = p.b_jacobian(x, y, t);
                CHECK(std::abs(j.trace()) < 1e-12);  // incompressible
                // FD check of the jacobian
                const Vec2 dx = (p.b(x + h, y, t) - p.b(x - h, y, t)) / (2 * h);
                const Vec2 dy = (p.b(x, y + h, t) - p.b(x, y - h, t)) / (2 * h);
                CHECK(j.a == doctest::Approx(dx.x).epsilon(1e-6));
                CHECK(j.c == doctest::Approx(dx.y).epsilon(1e-6));
                CHECK(j.b == doctest::Approx(dy.x).epsilon(1e-6));
                CHECK(j.d == doctest::Approx(dy.y).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("manufactured sources match finite differences") {
    const ValidationCheck check = check_manufactured_sources();
    INFO(check.detail);
    CHECK(check.passed);
}

TEST_CASE("exact gradients match finite differences") {
    const ValidationCheck check = check_exact_gradients();
    INFO(check.detail);
    CHECK(check.passed);
}

TEST_CASE("example3 interior layer width scales like sqrt(eps)") {
    // the arctan factor crosses 1/4 and 3/4 of its range at radii
    // r = sqrt(1/16 -+ sqrt(eps)/2); extract it from the exact solution along
    // the diagonal and bisect for the crossings
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const ProblemSpec p = example3(Example3Flow::Constant, eps);
        const double t = 0.25;
        const double a = 16.0 * std::sin(3.14159265358979323846 * t);
        auto arctan_factor = [&](double r) {
            const double x = 0.5 + r / std::sqrt(2.0);
            const double y = 0.5 + r / std::sqrt(2.0);
            return p.exact(x, y, t) / (a * x * (1 - x) * y * (1 - y));
        };
        auto bisect = [&](double level) {
            double lo = 1e-4, hi = 0.49;  // factor decreases with r
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (arctan_factor(mid) > level)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        };
        const double width = bisect(0.25) - bisect(0.75);
        const double ratio = width / std::sqrt(eps);
        CHECK(ratio > 2.0 / 1.5);
        CHECK(ratio < 2.0 * 1.5);
    }
}
