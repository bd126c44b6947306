#include "filippov/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "filippov/errors.hpp"

namespace filippov {

double sigma(ManifoldKind kind, const Vec3& x) {
    const double rho = squared_norm(x);
    if (kind == ManifoldKind::Sphere) return rho - 1.0;
    const double s = rho + 3.0;
    return s * s - 16.0 * (x[0] * x[0] + x[1] * x[1]);
}

Vec3 grad_sigma(ManifoldKind kind, const Vec3& x) {
    if (kind == ManifoldKind::Sphere) return 2.0 * x;
    const double k = 4.0 * (squared_norm(x) + 3.0);
    return {k * x[0] - 32.0 * x[0], k * x[1] - 32.0 * x[1], k * x[2]};
}

Poly3 sigma_polynomial(ManifoldKind kind) {
    Poly3 p;
    if (kind == ManifoldKind::Sphere) {
        p.set_coeff(2, 0, 0, 1.0);
        p.set_coeff(0, 2, 0, 1.0);
        p.set_coeff(0, 0, 2, 1.0);
        p.set_coeff(0, 0, 0, -1.0);
        return p;
    }
    // rho^2 + 6 rho + 9 - 16 x1^2 - 16 x2^2
    p.set_coeff(4, 0, 0, 1.0);
    p.set_coeff(0, 4, 0, 1.0);
    p.set_coeff(0, 0, 4, 1.0);
    p.set_coeff(2, 2, 0, 2.0);
    p.set_coeff(2, 0, 2, 2.0);
    p.set_coeff(0, 2, 2, 2.0);
    p.set_coeff(2, 0, 0, -10.0);
    p.set_coeff(0, 2, 0, -10.0);
    p.set_coeff(0, 0, 2, 6.0);
    p.set_coeff(0, 0, 0, 9.0);
    return p;
}

std::vector<Vec3> sample_manifold(ManifoldKind kind, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec3> out;
    out.reserve(n);
    if (kind == ManifoldKind::Sphere) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        while (out.size() < n) {
            const Vec3 g{gauss(rng), gauss(rng), gauss(rng)};
            const double r = norm(g);
            if (r < 1e-8) continue;
            out.push_back(g / r);
        }
        return out;
    }
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = angle(rng);
        const double v = angle(rng);
        const double r = kTorusMajorRadius + kTorusMinorRadius * std::cos(u);
        out.emplace_back(r * std::cos(v), r * std::sin(v), kTorusMinorRadius * std::sin(u));
    }
    return out;
}

Vec3 project_to_manifold(ManifoldKind kind, const Vec3& x) {
    Vec3 y = x;
    for (int step = 0; step < 50; ++step) {
        const double s = sigma(kind, y);
        if (std::abs(s) <= 1e-12) return y;
        const Vec3 g = grad_sigma(kind, y);
        const double g2 = squared_norm(g);
        if (g2 == 0.0) break;
        y -= (s / g2) * g;
    }
    if (std::abs(sigma(kind, y)) <= 1e-12) return y;
    throw Error(ErrorKind::NoConvergence, "project_to_manifold: Newton did not converge");
}

double min_gradient_norm_on(ManifoldKind kind) {
    // Torus: |grad sigma| = 16 r with r = sqrt(x1^2 + x2^2) in [1, 3].
    return kind == ManifoldKind::Sphere ? 2.0 : 16.0;
}

bool zero_is_regular_value(ManifoldKind kind, std::size_t n, std::uint64_t seed) {
    const double floor = 0.5 * min_gradient_norm_on(kind);
    for (const Vec3& x : sample_manifold(kind, n, seed))
        if (norm(grad_sigma(kind, x)) < floor) return false;
    return true;
}

Vec3 CircleCurve::point(double t) const {
    const auto [e1, e2] = orthonormal_complement(normal);
    return center + radius * (std::cos(t) * e1 + std::sin(t) * e2);
}

std::vector<Vec3> CircleCurve::sample(std::size_t n) const {
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(point(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
    return pts;
}

double max_sigma_residual(const CircleCurve& c, ManifoldKind kind, std::size_t n) {
    double worst = 0.0;
    for (const Vec3& p : c.sample(n)) worst = std::max(worst, std::abs(sigma(kind, p)));
    return worst;
}

}  // namespace filippov
