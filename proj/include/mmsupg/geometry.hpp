#ifndef MMSUPG_GEOMETRY_HPP
#define MMSUPG_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace mmsupg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// 2x2 matrix, row-major: [[a,b],[c,d]].
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    Mat2() = default;
    Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    // columns u, v
    static Mat2 from_columns(const Vec2& u, const Vec2& v) { return {u.x, v.x, u.y, v.y}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 transpose() const { return {a, c, b, d}; }

    Mat2 inverse() const {
        const double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2& operator+=(const Mat2& o) { a += o.a; b += o.b; c += o.c; d += o.d; return *this; }

    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

// Eigen-decomposition of a symmetric 2x2 matrix [[a,b],[b,d]].
// Returns eigenvalues (lam1 >= lam2) and the rotation angle of the first
// eigenvector; eigenvectors are (cos t, sin t) and (-sin t, cos t).
struct SymEigen2 {
    double lam1 = 0.0;
    double lam2 = 0.0;
    double cos_t = 1.0;
    double sin_t = 0.0;
};

inline SymEigen2 sym_eigen(const Mat2& m) {
    SymEigen2 e;
    const double mean = 0.5 * (m.a + m.d);
    const double delta = 0.5 * (m.a - m.d);
    const double off = 0.5 * (m.b + m.c);  // symmetrize roundoff
    const double r = std::hypot(delta, off);
    e.lam1 = mean + r;
    e.lam2 = mean - r;
    if (r > 0.0) {
        // eigenvector of lam1: direction (delta + r, off), normalized
        const double vx = delta + r;
        const double vy = off;
        const double n = std::hypot(vx, vy);
        if (n > 0.0) {
            e.cos_t = vx / n;
            e.sin_t = vy / n;
        } else {
            // delta = -r, off = 0: first eigendirection is the y axis
            e.cos_t = 0.0;
            e.sin_t = 1.0;
        }
    }
    return e;
}

// Rebuild V diag(l1,l2) V^T from a SymEigen2 frame.
inline Mat2 sym_from_eigen(const SymEigen2& e, double l1, double l2) {
    const double c = e.cos_t, s = e.sin_t;
    return {l1 * c * c + l2 * s * s, (l1 - l2) * c * s,
            (l1 - l2) * c * s, l1 * s * s + l2 * c * c};
}

}  // namespace mmsupg

#endif
