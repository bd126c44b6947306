#pragma once

#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/inelastic.hpp"

namespace filippov {

/// Filippov sliding field (Y sigma X - X sigma Y) / (Y sigma - X sigma) at a
/// manifold point. The Lie derivatives are accumulated in extended precision
/// since the quotient loses accuracy like 1/|X sigma| near tangencies.
/// Throws Error(TangencyPoint) when the denominator vanishes.
Vec3 filippov_field(const InelasticPair& pair, const Vec3& x);

/// (A + B) / 2, the closed form of the sliding field of an inelastic pair.
Mat3 mean_field(const Mat3& a, const Mat3& b);

/// Rodrigues rotation of x about the unit axis k by angle.
Vec3 rotate(const Vec3& k, double angle, const Vec3& x);

/// Sliding flow of an inelastic pair: x' = S x with S = w^ skew.
struct SlidingRotation {
    Mat3 generator;
    Vec3 axis;          // w, with S x = w x x
    double rate = 0.0;  // |w|, radians per unit time
    Vec3 normal;        // w / |w|, normal of every invariant plane
    std::vector<Vec3> equilibria;  // p+, p- on the sphere; empty on the torus
    double rho = 0.0;   // |2w|^2
    bool trivial = true;

    /// Period 2 pi / rate; infinite for the trivial field.
    double period() const;
    /// Exact flow: x0 rotated about the axis by rate * t.
    Vec3 flow(const Vec3& x0, double t) const;
};

/// Axis of a skew-symmetric matrix: (S32, S13, S21).
Vec3 skew_axis(const Mat3& s);

SlidingRotation sphere_sliding_data(const InelasticPair& pair);
SlidingRotation torus_sliding_data(const InelasticPair& pair);
SlidingRotation sliding_data(const InelasticPair& pair);

/// Lines through the origin in the plane <x, nu> = 0 on which X sigma_1 = 0,
/// parametrized as ((xi (b31 + a31) - a21 - b21) / (a32 + b32), xi, 1) t with
/// xi a root of Xi(s) = Xi2 s^2 + Xi1 s + Xi0.
struct XiPolynomial {
    double xi2 = 0.0;
    double xi1 = 0.0;
    double xi0 = 0.0;
    std::vector<double> roots;
    std::vector<Vec3> directions;
    std::vector<Vec3> points;  // intersections with the sphere, at most 4
    bool identically_zero = false;  // the whole great circle is tangent
};

/// Throws Error(ParametrizationDegenerate) when a32 + b32 vanishes.
XiPolynomial xi_polynomial(const InelasticPair& pair);

struct OrbitTangencies {
    std::vector<double> angles;  // orbit angle in [0, 2 pi) measured from e1 about the normal
    std::vector<Vec3> points;
    bool whole_orbit = false;    // the orbit lies in the tangency set
};

/// Tangency points on the sliding orbit of x0 (sphere): the circle
/// |x| = 1, <x, n> = <x0, n>, parametrized as h n + r (cos t e1 + sin t e2)
/// with (e1, e2) = orthonormal_complement(n). Solved in the angle directly:
/// a quadratic in tan t on great circles, bracketed roots otherwise.
OrbitTangencies orbit_tangencies(const InelasticPair& pair, const Vec3& x0);

/// At most 4 points of the orbit of x0 where X sigma_1 = 0.
std::vector<Vec3> trajectory_tangency_points(const InelasticPair& pair, const Vec3& x0);

}  // namespace filippov
