#include "mmsupg/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace mmsupg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// logistic (1 + e^z)^{-1} without overflow for large |z|
double logistic(double z) { return 0.5 * (1.0 - std::tanh(0.5 * z)); }

}  // namespace

ProblemSpec example1(double c, double eps) {
    if (!(c > 0.0)) throw std::invalid_argument("example1: C must be positive");
    if (eps < 0.0) throw std::invalid_argument("example1: eps must be nonnegative");

    ProblemSpec p;
    p.name = "example1";
    p.eps = eps;
    p.bc = BcKind::DirichletFromExact;
    p.b = [](double, double, double) { return Vec2(1.0, 1.0); };
    p.b_jacobian = [](double, double, double) { return Mat2::zero(); };

    // With s = (1 + e^z)^{-1}, z = C(x+y-t):
    //   u_t = C s(1-s),  u_x = u_y = -C s(1-s),  lap u = 2C^2 s(1-s)(1-2s)
    auto value = [c](double x, double y, double t) { return logistic(c * (x + y - t)); };
    p.exact = value;
    p.has_exact = true;
    p.exact_grad = [c](double x, double y, double t) {
        const double s = logistic(c * (x + y - t));
        const double g = -c * s * (1.0 - s);
        return Vec2(g, g);
    };
    p.f = [c, eps](double x, double y, double t) {
        const double s = logistic(c * (x + y - t));
        const double s1 = s * (1.0 - s);
        return -c * s1 - 2.0 * eps * c * c * s1 * (1.0 - 2.0 * s);
    };
    p.u0 = [value](double x, double y) { return value(x, y, 0.0); };
    return p;
}

ProblemSpec example2(double eps) {
    ProblemSpec p;
    p.name = "example2";
    p.eps = eps;
    p.bc = BcKind::InflowDirichletZeroOutflowNeumann;
    p.b = [](double, double, double) { return Vec2(1.0, 0.7002075); };
    p.b_jacobian = [](double, double, double) { return Mat2::zero(); };
    p.f = [](double, double, double) { return 0.0; };
    p.u0 = [](double x, double y) {
        const double dx = x - 0.25, dy = y - 0.25;
        return (std::sqrt(dx * dx + dy * dy) <= 0.2) ? 1.0 : 0.0;
    };
    p.has_exact = false;
    return p;
}

ProblemSpec example3(Example3Flow flow, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("example3: eps must be positive");

    ProblemSpec p;
    p.name = "example3";
    p.eps = eps;
    p.bc = BcKind::DirichletZero;
    if (flow == Example3Flow::Constant) {
        p.b = [](double, double, double) { return Vec2(2.0, 3.0); };
        p.b_jacobian = [](double, double, double) { return Mat2::zero(); };
    } else {
        p.b = [](double x, double y, double t) { return Vec2(y - t, x - t); };
        p.b_jacobian = [](double, double, double) { return Mat2(0.0, 1.0, 1.0, 0.0); };
    }

    const double inv_sqrt_eps = 1.0 / std::sqrt(eps);
    // u = a(t) X(x) Y(y) A(x,y),  A = 1/2 + atan(w)/pi,
    // w = 2 eps^{-1/2} (0.25^2 - (x-0.5)^2 - (y-0.5)^2)
    auto parts = [inv_sqrt_eps](double x, double y) {
        struct Parts {
            double X, Y, Xp, Yp, A, Ax, Ay, Axx, Ayy;
        } q;
        q.X = x * (1.0 - x);
        q.Y = y * (1.0 - y);
        q.Xp = 1.0 - 2.0 * x;
        q.Yp = 1.0 - 2.0 * y;
        const double w = 2.0 * inv_sqrt_eps * (0.0625 - (x - 0.5) * (x - 0.5) - (y - 0.5) * (y - 0.5));
        const double wx = -4.0 * inv_sqrt_eps * (x - 0.5);
        const double wy = -4.0 * inv_sqrt_eps * (y - 0.5);
        const double wxx = -4.0 * inv_sqrt_eps;
        const double den = 1.0 + w * w;
        q.A = 0.5 + std::atan(w) / kPi;
        q.Ax = wx / (kPi * den);
        q.Ay = wy / (kPi * den);
        q.Axx = (wxx * den - 2.0 * w * wx * wx) / (kPi * den * den);
        q.Ayy = (wxx * den - 2.0 * w * wy * wy) / (kPi * den * den);
        return q;
    };

    p.exact = [parts](double x, double y, double t) {
        const auto q = parts(x, y);
        return 16.0 * std::sin(kPi * t) * q.X * q.Y * q.A;
    };
    p.has_exact = true;
    p.exact_grad = [parts](double x, double y, double t) {
        const auto q = parts(x, y);
        const double a = 16.0 * std::sin(kPi * t);
        return Vec2(a * (q.Xp * q.Y * q.A + q.X * q.Y * q.Ax),
                    a * (q.X * q.Yp * q.A + q.X * q.Y * q.Ay));
    };
    p.f = [parts, eps, b = p.b](double x, double y, double t) {
        const auto q = parts(x, y);
        const double a = 16.0 * std::sin(kPi * t);
        const double ut = 16.0 * kPi * std::cos(kPi * t) * q.X * q.Y * q.A;
        const double ux = a * (q.Xp * q.Y * q.A + q.X * q.Y * q.Ax);
        const double uy = a * (q.X * q.Yp * q.A + q.X * q.Y * q.Ay);
        const double uxx = a * (-2.0 * q.Y * q.A + 2.0 * q.Xp * q.Y * q.Ax + q.X * q.Y * q.Axx);
        const double uyy = a * (-2.0 * q.X * q.A + 2.0 * q.X * q.Yp * q.Ay + q.X * q.Y * q.Ayy);
        const Vec2 bv = b(x, y, t);
        return ut + bv.x * ux + bv.y * uy - eps * (uxx + uyy);
    };
    p.u0 = [](double, double) { return 0.0; };  // sin(0) = 0
    return p;
}

}  // namespace mmsupg
