#include "filippov/sliding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "filippov/errors.hpp"
#include "filippov/roots.hpp"
#include "filippov/tangency.hpp"

namespace filippov {

namespace {

using Ext = long double;
using ExtVec = std::array<Ext, 3>;

ExtVec ext_apply(const Mat3& m, const Vec3& x) {
    ExtVec y{};
    for (std::size_t i = 0; i < 3; ++i)
        y[i] = static_cast<Ext>(m(i, 0)) * x[0] + static_cast<Ext>(m(i, 1)) * x[1] +
               static_cast<Ext>(m(i, 2)) * x[2];
    return y;
}

ExtVec ext_grad_sigma(ManifoldKind kind, const Vec3& x) {
    const ExtVec e{x[0], x[1], x[2]};
    if (kind == ManifoldKind::Sphere) return {2 * e[0], 2 * e[1], 2 * e[2]};
    const Ext k = 4 * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + 3);
    return {(k - 32) * e[0], (k - 32) * e[1], k * e[2]};
}

Ext ext_dot(const ExtVec& a, const ExtVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

}  // namespace

Vec3 filippov_field(const InelasticPair& pair, const Vec3& x) {
    const ExtVec g = ext_grad_sigma(pair.kind(), x);
    const ExtVec fx = ext_apply(pair.a(), x);
    const ExtVec fy = ext_apply(pair.b(), x);
    const Ext xs = ext_dot(fx, g);
    const Ext ys = ext_dot(fy, g);
    const Ext den = ys - xs;

    const double r2 = squared_norm(x);
    const double cut = 1e-12 * pair.scale() * std::max(1.0, r2 * r2);
    if (!(std::abs(static_cast<double>(den)) > cut))
        throw Error(ErrorKind::TangencyPoint, "filippov_field: Y sigma - X sigma vanishes (tangency point)");

    Vec3 out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = static_cast<double>((ys * fx[i] - xs * fy[i]) / den);
    return out;
}

Mat3 mean_field(const Mat3& a, const Mat3& b) { return 0.5 * (a + b); }

Vec3 rotate(const Vec3& k, double angle, const Vec3& x) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * x + s * cross(k, x) + ((1.0 - c) * dot(k, x)) * k;
}

double SlidingRotation::period() const {
    return trivial ? std::numeric_limits<double>::infinity() : kTwoPi / rate;
}

Vec3 SlidingRotation::flow(const Vec3& x0, double t) const {
    if (trivial || t == 0.0) return x0;
    return rotate(normal, rate * t, x0);
}

Vec3 skew_axis(const Mat3& s) { return {s(2, 1), s(0, 2), s(1, 0)}; }

namespace {

void finish_rotation(SlidingRotation& r, double scale) {
    r.rate = norm(r.axis);
    r.trivial = !(r.rate > 1e-15 * scale);
    if (!r.trivial) r.normal = r.axis / r.rate;
}

}  // namespace

SlidingRotation sphere_sliding_data(const InelasticPair& pair) {
    const Mat3& a = pair.a();
    const Mat3& b = pair.b();
    const double s21 = a(1, 0) + b(1, 0);
    const double s31 = a(2, 0) + b(2, 0);
    const double s32 = a(2, 1) + b(2, 1);

    SlidingRotation r;
    r.generator = mean_field(a, b);
    r.axis = 0.5 * Vec3{s32, -s31, s21};
    r.rho = s21 * s21 + s31 * s31 + s32 * s32;
    finish_rotation(r, pair.scale());
    if (!r.trivial) r.equilibria = {r.normal, -r.normal};
    return r;
}

SlidingRotation torus_sliding_data(const InelasticPair& pair) {
    const double s21 = pair.a()(1, 0) + pair.b()(1, 0);
    SlidingRotation r;
    r.generator = mean_field(pair.a(), pair.b());
    r.axis = Vec3{0.0, 0.0, 0.5 * s21};
    r.rho = s21 * s21;
    finish_rotation(r, pair.scale());
    return r;
}

SlidingRotation sliding_data(const InelasticPair& pair) {
    return pair.kind() == ManifoldKind::Sphere ? sphere_sliding_data(pair) : torus_sliding_data(pair);
}

// ---------------------------------------------------------------------------
// Tangency points on sliding orbits

XiPolynomial xi_polynomial(const InelasticPair& pair) {
    if (pair.kind() != ManifoldKind::Sphere)
        throw Error(ErrorKind::InvalidArgument, "xi_polynomial: sphere pairs only");
    const auto a = [&](int i, int j) { return pair.a()(i - 1, j - 1); };
    const auto b = [&](int i, int j) { return pair.b()(i - 1, j - 1); };
    const double a11 = a(1, 1), a12 = a(1, 2), a13 = a(1, 3), a21 = a(2, 1), a22 = a(2, 2),
                 a23 = a(2, 3), a31 = a(3, 1), a32 = a(3, 2), a33 = a(3, 3);
    const double b21 = b(2, 1), b31 = b(3, 1), b32 = b(3, 2);

    const double denom = a32 + b32;
    if (!(std::abs(denom) > 1e-12 * pair.scale()))
        throw Error(ErrorKind::ParametrizationDegenerate,
                    "xi_polynomial: a32 + b32 = 0, line parametrization undefined");

    XiPolynomial xi;
    xi.xi2 = 2 * a22 * b32 * a32 + 2 * a11 * b31 * a31 + a21 * b32 * b31 + a21 * b32 * a31 +
             a21 * a32 * b31 + a21 * a32 * a31 + a12 * b32 * b31 + a12 * b32 * a31 +
             a12 * a32 * b31 + a12 * a32 * a31 + a11 * b31 * b31 + a11 * a31 * a31 +
             a22 * b32 * b32 + a22 * a32 * a32;
    xi.xi1 = a32 * a32 * a32 - 2 * b21 * b31 * a11 - 2 * b21 * a31 * a11 - b21 * b32 * a21 -
             b21 * a32 * a21 - b21 * b32 * a12 - b21 * a32 * a12 + b31 * b32 * a13 +
             a31 * b32 * a13 + b31 * a32 * a13 + a31 * a32 * a13 - 2 * a11 * b31 * a21 -
             2 * a11 * a31 * a21 - a12 * b32 * a21 - a12 * a32 * a21 + a31 * b32 * b31 +
             a31 * a32 * b31 + 2 * a32 * b32 * a23 - a21 * a21 * b32 - a21 * a21 * a32 +
             a31 * a31 * b32 + a31 * a31 * a32 + b32 * b32 * a32 + 2 * b32 * a32 * a32 +
             b32 * b32 * a23 + a32 * a32 * a23;
    xi.xi0 = -a13 * a32 * a21 + 2 * a33 * b32 * a32 + 2 * a11 * a21 * b21 - a21 * b32 * a31 -
             a31 * b32 * b21 - a21 * a32 * a31 - a31 * a32 * b21 - a13 * b32 * a21 -
             a13 * b32 * b21 + a11 * a21 * a21 + a11 * b21 * b21 + a33 * b32 * b32 +
             a33 * a32 * a32 - a13 * a32 * b21;

    const QuadraticRoots qr = solve_quadratic(xi.xi2, xi.xi1, xi.xi0);
    if (qr.identically_zero) {
        xi.identically_zero = true;
        return xi;
    }
    xi.roots = qr.roots;
    for (double s : xi.roots) xi.directions.push_back({(s * (b31 + a31) - a21 - b21) / denom, s, 1.0});
    // A vanishing leading coefficient means the x3 = 0 line of the plane is a root.
    if (xi.xi2 == 0.0) xi.directions.push_back({b31 + a31, denom, 0.0});

    const SymForm3 q = quadratic_form_Q(pair.a());
    for (const Vec3& d : xi.directions) {
        const Vec3 p = normalized(d);
        if (std::abs(q.evaluate(p)) <= 1e-9) {
            xi.points.push_back(p);
            xi.points.push_back(-p);
        }
    }
    return xi;
}

OrbitTangencies orbit_tangencies(const InelasticPair& pair, const Vec3& x0) {
    if (pair.kind() != ManifoldKind::Sphere)
        throw Error(ErrorKind::InvalidArgument, "orbit_tangencies: sphere pairs only");
    const SlidingRotation rot = sphere_sliding_data(pair);
    if (rot.trivial) throw Error(ErrorKind::TrivialField, "orbit_tangencies: trivial sliding field");

    const Vec3 n = rot.normal;
    const auto [e1, e2] = orthonormal_complement(n);
    const double h = std::clamp(dot(x0, n), -1.0, 1.0);
    const double r = std::sqrt(std::max(0.0, 1.0 - h * h));

    OrbitTangencies out;
    if (r <= 1e-12) return out;  // equilibrium: the orbit is a point

    const Mat3 qm = quadratic_form_Q(pair.a()).matrix();
    const double q11 = dot(e1, qm * e1);
    const double q12 = dot(e1, qm * e2);
    const double q22 = dot(e2, qm * e2);
    const auto point_at = [&](double t) { return h * n + r * (std::cos(t) * e1 + std::sin(t) * e2); };

    std::vector<double> angles;
    if (std::abs(h) <= 1e-12) {
        // cos^2 t (q11 + 2 q12 tan t + q22 tan^2 t) = 0
        const QuadraticRoots qr = solve_quadratic(q22, 2.0 * q12, q11);
        if (qr.identically_zero) {
            out.whole_orbit = true;
            return out;
        }
        for (double tau : qr.roots) {
            const double t = std::atan(tau);
            angles.push_back(wrap_angle(t));
            angles.push_back(wrap_angle(t + std::numbers::pi));
        }
        if (q22 == 0.0) {
            angles.push_back(0.5 * std::numbers::pi);
            angles.push_back(1.5 * std::numbers::pi);
        }
    } else {
        const double p1 = dot(n, qm * e1);
        const double p2 = dot(n, qm * e2);
        const double q00 = dot(n, qm * n);
        const auto f = [&](double t) {
            const double c = std::cos(t);
            const double s = std::sin(t);
            return r * r * (q11 * c * c + 2.0 * q12 * c * s + q22 * s * s) +
                   2.0 * h * r * (p1 * c + p2 * s) + h * h * q00;
        };
        const double scale = std::max(1.0, frobenius_norm(qm));
        // Trigonometric coefficients: all vanish iff the orbit is tangent throughout.
        const double c0 = 0.5 * r * r * (q11 + q22) + h * h * q00;
        const double c2 = 0.5 * r * r * std::hypot(q11 - q22, 2.0 * q12);
        const double c1 = 2.0 * std::abs(h) * r * std::hypot(p1, p2);
        if (std::abs(c0) + c1 + c2 <= 1e-14 * scale) {
            out.whole_orbit = true;
            return out;
        }
        for (const ScalarRoot& root : find_roots(f, 0.0, kTwoPi, 2048, 1e-13 * scale))
            angles.push_back(wrap_angle(root.t));
    }

    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double l, double rr) { return std::abs(l - rr) <= 1e-12; }),
                 angles.end());
    if (angles.size() > 1 && kTwoPi - angles.back() + angles.front() <= 1e-12) angles.pop_back();

    for (double t : angles) {
        out.angles.push_back(t);
        out.points.push_back(point_at(t));
    }
    return out;
}

std::vector<Vec3> trajectory_tangency_points(const InelasticPair& pair, const Vec3& x0) {
    return orbit_tangencies(pair, x0).points;
}

}  // namespace filippov
