#include "mmsupg/norms.hpp"

#include <cmath>

namespace mmsupg {

namespace {

// 6-point degree-4 rule (two symmetric orbits); weights sum to 1.
struct TriQuad {
    double l0, l1, l2, w;
};
constexpr double kA1 = 0.816847572980459, kB1 = 0.091576213509771, kW1 = 0.109951743655322;
constexpr double kA2 = 0.108103018168070, kB2 = 0.445948490915965, kW2 = 0.223381589678011;
constexpr TriQuad kDegree4Rule[6] = {
    {kA1, kB1, kB1, kW1}, {kB1, kA1, kB1, kW1}, {kB1, kB1, kA1, kW1},
    {kA2, kB2, kB2, kW2}, {kB2, kA2, kB2, kW2}, {kB2, kB2, kA2, kW2},
};

struct Element {
    Vec2 x0, x1, x2;
    Vec2 g0, g1, g2;
    double area;
};

Element element(const TriMesh& mesh, int k) {
    Element e;
    const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
    e.x0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    e.x1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    e.x2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const double two_a = (e.x1.x - e.x0.x) * (e.x2.y - e.x0.y) - (e.x1.y - e.x0.y) * (e.x2.x - e.x0.x);
    e.area = 0.5 * two_a;
    e.g0 = Vec2(e.x1.y - e.x2.y, e.x2.x - e.x1.x) / two_a;
    e.g1 = Vec2(e.x2.y - e.x0.y, e.x0.x - e.x2.x) / two_a;
    e.g2 = Vec2(e.x0.y - e.x1.y, e.x1.x - e.x0.x) / two_a;
    return e;
}

}  // namespace

double h1_seminorm_error(const TriMesh& mesh, const std::vector<double>& u,
                         const std::function<Vec2(double, double, double)>& exact_grad, double t) {
    double acc = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const Element e = element(mesh, k);
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const Vec2 gh = e.g0 * u[static_cast<std::size_t>(tri[0])] +
                        e.g1 * u[static_cast<std::size_t>(tri[1])] +
                        e.g2 * u[static_cast<std::size_t>(tri[2])];
        for (const auto& q : kDegree4Rule) {
            const Vec2 p = e.x0 * q.l0 + e.x1 * q.l1 + e.x2 * q.l2;
            const Vec2 diff = gh - exact_grad(p.x, p.y, t);
            acc += e.area * q.w * diff.norm2();
        }
    }
    return std::sqrt(acc);
}

double h1_seminorm(const TriMesh& mesh, const std::vector<double>& u) {
    double acc = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const Element e = element(mesh, k);
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const Vec2 gh = e.g0 * u[static_cast<std::size_t>(tri[0])] +
                        e.g1 * u[static_cast<std::size_t>(tri[1])] +
                        e.g2 * u[static_cast<std::size_t>(tri[2])];
        acc += e.area * gh.norm2();
    }
    return std::sqrt(acc);
}

double l2_error(const TriMesh& mesh, const std::vector<double>& u,
                const std::function<double(double, double, double)>& exact, double t) {
    double acc = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
        const Element e = element(mesh, k);
        const auto& tri = mesh.triangles[static_cast<std::size_t>(k)];
        const double u0 = u[static_cast<std::size_t>(tri[0])];
        const double u1 = u[static_cast<std::size_t>(tri[1])];
        const double u2 = u[static_cast<std::size_t>(tri[2])];
        for (const auto& q : kDegree4Rule) {
            const Vec2 p = e.x0 * q.l0 + e.x1 * q.l1 + e.x2 * q.l2;
            const double uh = u0 * q.l0 + u1 * q.l1 + u2 * q.l2;
            const double d = uh - exact(p.x, p.y, t);
            acc += e.area * q.w * d * d;
        }
    }
    return std::sqrt(acc);
}

}  // namespace mmsupg
