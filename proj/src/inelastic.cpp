#include "filippov/inelastic.hpp"

#include <algorithm>
#include <cmath>

namespace filippov {

Mat3 companion_sphere(const Mat3& a, double b21, double b31, double b32) {
    return Mat3{
        {-a(0, 0), -a(1, 0) - b21 - a(0, 1), -a(0, 2) - a(2, 0) - b31},
        {b21, -a(1, 1), -a(2, 1) - b32 - a(1, 2)},
        {b31, b32, -a(2, 2)},
    };
}

Mat3 companion_torus(const Mat3& a, double b21) {
    return Mat3{
        {-a(0, 0), -a(0, 1) - a(1, 0) - b21, -a(0, 2)},
        {b21, -a(1, 1), -a(1, 2)},
        {-a(2, 0), -a(2, 1), -a(2, 2)},
    };
}

Mat3 companion(ManifoldKind kind, const Mat3& a, const FreeParameters& free) {
    return kind == ManifoldKind::Sphere ? companion_sphere(a, free.b21, free.b31, free.b32)
                                        : companion_torus(a, free.b21);
}

InelasticPair::InelasticPair(ManifoldKind kind, const Mat3& a, const FreeParameters& free)
    : kind_(kind), a_(a), b_(companion(kind, a, free)), free_(free) {
    if (kind_ == ManifoldKind::Torus) free_.b31 = free_.b32 = 0.0;
}

double InelasticPair::scale() const {
    return std::max({1.0, frobenius_norm(a_), frobenius_norm(b_)});
}

double verify_inelastic(const Mat3& a, const Mat3& b, ManifoldKind kind, std::size_t n,
                        std::uint64_t seed) {
    double worst = 0.0;
    for (const Vec3& x : sample_manifold(kind, n, seed)) {
        const Vec3 g = grad_sigma(kind, x);
        worst = std::max(worst, std::abs(dot(a * x, g) + dot(b * x, g)));
    }
    return worst;
}

FreeParameters free_parameters_of(ManifoldKind kind, const Mat3& b) {
    if (kind == ManifoldKind::Sphere) return {b(1, 0), b(2, 0), b(2, 1)};
    return {b(1, 0), 0.0, 0.0};
}

std::vector<PatternMismatch> companion_mismatches(ManifoldKind kind, const Mat3& a, const Mat3& b,
                                                  double tol) {
    const Mat3 expected = companion(kind, a, free_parameters_of(kind, b));
    std::vector<PatternMismatch> out;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (!(std::abs(expected(i, j) - b(i, j)) <= tol))
                out.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, expected(i, j),
                               b(i, j)});
    return out;
}

}  // namespace filippov
