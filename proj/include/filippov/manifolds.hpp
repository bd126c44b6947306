#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/polynomial.hpp"

namespace filippov {

/// The two switching manifolds.
///   Sphere: sigma = |x|^2 - 1.
///   Torus:  sigma = (|x|^2 + 3)^2 - 16 (x1^2 + x2^2), the torus about the x3
///           axis with major radius 2 and minor radius 1.
enum class ManifoldKind { Sphere, Torus };

constexpr std::string_view to_string(ManifoldKind kind) {
    return kind == ManifoldKind::Sphere ? "sphere" : "torus";
}

inline constexpr double kTorusMajorRadius = 2.0;
inline constexpr double kTorusMinorRadius = 1.0;

double sigma(ManifoldKind kind, const Vec3& x);
Vec3 grad_sigma(ManifoldKind kind, const Vec3& x);

/// sigma as a polynomial, for symbolic Lie derivatives.
Poly3 sigma_polynomial(ManifoldKind kind);

/// n deterministic points on the manifold. Sphere: normalized Gaussian
/// triples. Torus: ((2 + cos u) cos v, (2 + cos u) sin v, sin u) with u, v
/// uniform.
std::vector<Vec3> sample_manifold(ManifoldKind kind, std::size_t n, std::uint64_t seed);

/// Newton iteration along the gradient until |sigma| <= 1e-12.
/// Throws Error(NoConvergence) after 50 steps.
Vec3 project_to_manifold(ManifoldKind kind, const Vec3& x);

/// Smallest gradient norm on the manifold (2 on the sphere, 16 on the torus,
/// attained on the inner equator).
double min_gradient_norm_on(ManifoldKind kind);

/// Samples sigma on random points and checks the gradient stays away from zero.
bool zero_is_regular_value(ManifoldKind kind, std::size_t n = 1000, std::uint64_t seed = 1);

/// Circle stored geometrically.
struct CircleCurve {
    Vec3 center;
    Vec3 normal;   // unit normal of the containing plane
    double radius = 0.0;
    std::string label;

    /// center + radius (cos t e1 + sin t e2) with (e1, e2, normal) orthonormal.
    Vec3 point(double t) const;
    std::vector<Vec3> sample(std::size_t n) const;
};

/// max |sigma| over n equally spaced points of the circle.
double max_sigma_residual(const CircleCurve& c, ManifoldKind kind, std::size_t n = 256);

}  // namespace filippov
