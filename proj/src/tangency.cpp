#include "filippov/tangency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "filippov/errors.hpp"

namespace filippov {

// ---------------------------------------------------------------------------
// Lie derivatives and region labels

Poly3 lie_polynomial(const Mat3& a, ManifoldKind kind, int order) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "lie_polynomial: order must be >= 1");
    Poly3 p = sigma_polynomial(kind);
    for (int k = 0; k < order; ++k) p = p.lie_derivative(a);
    return p;
}

double lie_derivative(const Mat3& a, ManifoldKind kind, const Vec3& x, int order) {
    if (order < 1 || order > 3)
        throw Error(ErrorKind::InvalidArgument, "lie_derivative: order must be 1, 2 or 3");
    return lie_polynomial(a, kind, order).evaluate(x);
}

double tangency_threshold(const Mat3& a, const Vec3& x, double tol, int order) {
    const double r2 = squared_norm(x);
    return tol * std::pow(std::max(1.0, frobenius_norm(a)), order) * std::max(1.0, r2 * r2);
}

std::string_view to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::Sewing: return "Sewing";
        case RegionKind::Escape: return "Escape";
        case RegionKind::Sliding: return "Sliding";
        case RegionKind::Tangency: return "Tangency";
    }
    return "?";
}

std::string_view to_string(TangencyOrder order) {
    switch (order) {
        case TangencyOrder::Quadratic: return "Quadratic";
        case TangencyOrder::Cubic: return "Cubic";
        case TangencyOrder::Higher: return "Higher";
    }
    return "?";
}

std::string to_string(const RegionLabel& label) {
    std::string s(to_string(label.kind));
    if (label.kind == RegionKind::Tangency) s += "(" + std::string(to_string(label.order)) + ")";
    return s;
}

namespace {

TangencyOrder tangency_order(const Mat3& f, ManifoldKind kind, const Vec3& x, double tol) {
    if (std::abs(lie_derivative(f, kind, x, 2)) > tangency_threshold(f, x, tol, 2))
        return TangencyOrder::Quadratic;
    if (std::abs(lie_derivative(f, kind, x, 3)) > tangency_threshold(f, x, tol, 3))
        return TangencyOrder::Cubic;
    return TangencyOrder::Higher;
}

}  // namespace

RegionLabel classify_point(const InelasticPair& pair, const Vec3& x, double tol) {
    const ManifoldKind kind = pair.kind();
    const Vec3 g = grad_sigma(kind, x);
    const double xs = dot(pair.a() * x, g);
    const double ys = dot(pair.b() * x, g);
    const double tx = tangency_threshold(pair.a(), x, tol);
    const double ty = tangency_threshold(pair.b(), x, tol);

    if ((xs > tx && ys > ty) || (xs < -tx && ys < -ty)) return {RegionKind::Sewing};
    if (xs > tx && ys < -ty) return {RegionKind::Escape};
    if (xs < -tx && ys > ty) return {RegionKind::Sliding};

    const Mat3& tangent_field = std::abs(xs) <= tx ? pair.a() : pair.b();
    return {RegionKind::Tangency, tangency_order(tangent_field, kind, x, tol)};
}

// ---------------------------------------------------------------------------
// Sphere

SymForm3 quadratic_form_Q(const Mat3& a) {
    return SymForm3(2.0 * a(0, 0), a(0, 1) + a(1, 0), a(0, 2) + a(2, 0), 2.0 * a(1, 1),
                    a(1, 2) + a(2, 1), 2.0 * a(2, 2));
}

std::string_view to_string(SphereConfiguration c) {
    switch (c) {
        case SphereConfiguration::Empty: return "Empty";
        case SphereConfiguration::TwoPoints: return "TwoPoints";
        case SphereConfiguration::OneGreatCircle: return "OneGreatCircle";
        case SphereConfiguration::TwoCrossingCircles: return "TwoCrossingCircles";
        case SphereConfiguration::TwoDisjointLoops: return "TwoDisjointLoops";
    }
    return "?";
}

SphereConfiguration configuration_for(const Inertia& in) {
    // Normal form: l1 u^2 + l2 v^2 + l3 w^2 = 0 on u^2 + v^2 + w^2 = 1.
    switch (in.n_zero) {
        case 0:
            return (in.n_plus == 3 || in.n_minus == 3) ? SphereConfiguration::Empty
                                                       : SphereConfiguration::TwoDisjointLoops;
        case 1:
            return (in.n_plus == 2 || in.n_minus == 2) ? SphereConfiguration::TwoPoints
                                                       : SphereConfiguration::TwoCrossingCircles;
        case 2:
            return SphereConfiguration::OneGreatCircle;
        default:
            throw Error(ErrorKind::ZeroForm,
                        "tangency form vanishes identically: the whole sphere is tangent");
    }
}

TangencyClassification classify_sphere_tangency(const SymForm3& q, double tol) {
    TangencyClassification out;
    out.inertia = inertia(q, tol);
    out.configuration = configuration_for(out.inertia);

    const auto& lambda = q.eigenvalues();
    const auto& vec = q.eigenvectors();
    const double zero_cut = tol * std::max(1.0, q.spectral_radius());
    std::vector<std::size_t> pos, neg, nil;
    for (std::size_t i = 0; i < 3; ++i) {
        if (lambda[i] > zero_cut)
            pos.push_back(i);
        else if (lambda[i] < -zero_cut)
            neg.push_back(i);
        else
            nil.push_back(i);
    }

    switch (out.configuration) {
        case SphereConfiguration::Empty:
            break;
        case SphereConfiguration::TwoPoints:
            out.points = {vec[nil[0]], -vec[nil[0]]};
            break;
        case SphereConfiguration::OneGreatCircle: {
            const std::size_t k = pos.empty() ? neg[0] : pos[0];
            out.circles.push_back({Vec3{}, vec[k], 1.0, "T1"});
            break;
        }
        case SphereConfiguration::TwoCrossingCircles: {
            // sqrt(l+) u = +-sqrt(|l-|) v
            const Vec3 u = std::sqrt(lambda[pos[0]]) * vec[pos[0]];
            const Vec3 v = std::sqrt(-lambda[neg[0]]) * vec[neg[0]];
            out.circles.push_back({Vec3{}, normalized(u - v), 1.0, "T1"});
            out.circles.push_back({Vec3{}, normalized(u + v), 1.0, "T2"});
            break;
        }
        case SphereConfiguration::TwoDisjointLoops: {
            // The eigenvalue of the minority sign is the cone axis.
            const bool axis_negative = pos.size() == 2;
            const std::size_t ax = axis_negative ? neg[0] : pos[0];
            const auto& others = axis_negative ? pos : neg;
            const double mu_a = std::abs(lambda[ax]);
            const double mu1 = std::abs(lambda[others[0]]);
            const double mu2 = std::abs(lambda[others[1]]);
            SampledLoop upper{"T1", {}};
            SampledLoop lower{"T2", {}};
            for (std::size_t i = 0; i < kLoopSamples; ++i) {
                const double phi =
                    2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(kLoopSamples);
                const double c = std::cos(phi);
                const double s = std::sin(phi);
                const double k = mu1 * c * c + mu2 * s * s;
                const double r = std::sqrt(mu_a / (k + mu_a));
                const double w = std::sqrt(k / (k + mu_a));
                const Vec3 base = r * c * vec[others[0]] + r * s * vec[others[1]];
                upper.points.push_back(base + w * vec[ax]);
                lower.points.push_back(base - w * vec[ax]);
            }
            out.loops.push_back(std::move(upper));
            out.loops.push_back(std::move(lower));
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Torus

namespace {

double monomial(const std::array<int, 3>& e, const Vec3& x) {
    double r = 1.0;
    for (std::size_t v = 0; v < 3; ++v)
        for (int k = 0; k < e[v]; ++k) r *= x[v];
    return r;
}

}  // namespace

double TorusDecomposition::evaluate_q2(const Vec3& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < q2.size(); ++i) s += q2[i] * monomial(kQ2Monomials[i], x);
    return s;
}

double TorusDecomposition::evaluate_q4(const Vec3& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < q4.size(); ++i) s += q4[i] * monomial(kQ4Monomials[i], x);
    return s;
}

std::string monomial_name(const std::array<int, 3>& exponents) {
    std::string s;
    for (std::size_t v = 0; v < 3; ++v) {
        if (exponents[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(v + 1);
        if (exponents[v] > 1) s += "^" + std::to_string(exponents[v]);
    }
    return s.empty() ? "1" : s;
}

TorusDecomposition torus_q2_q4(const Mat3& m) {
    const auto a = [&](int i, int j) { return m(i - 1, j - 1); };
    TorusDecomposition d;
    d.q2 = {-20 * a(1, 1),
            -20 * a(2, 1) - 20 * a(1, 2),
            -20 * a(2, 2),
            -20 * a(1, 3) + 12 * a(3, 1),
            12 * a(3, 2) - 20 * a(2, 3),
            12 * a(3, 3)};
    d.q4 = {4 * a(1, 1),
            4 * a(2, 1) + 4 * a(1, 2),
            4 * a(1, 1) + 4 * a(2, 2),
            4 * a(2, 1) + 4 * a(1, 2),
            4 * a(2, 2),
            4 * a(1, 3) + 4 * a(3, 1),
            4 * a(2, 3) + 4 * a(3, 2),
            4 * a(1, 3) + 4 * a(3, 1),
            4 * a(2, 3) + 4 * a(3, 2),
            4 * a(1, 1) + 4 * a(3, 3),
            4 * a(2, 1) + 4 * a(1, 2),
            4 * a(2, 2) + 4 * a(3, 3),
            4 * a(1, 3) + 4 * a(3, 1),
            4 * a(2, 3) + 4 * a(3, 2),
            4 * a(3, 3)};
    return d;
}

std::vector<CoefficientViolation> q4_violations(const Mat3& a, double tol) {
    const TorusDecomposition d = torus_q2_q4(a);
    const double cut = tol * std::max(1.0, frobenius_norm(a));
    std::vector<CoefficientViolation> out;
    for (std::size_t i = 0; i < d.q4.size(); ++i)
        if (std::abs(d.q4[i]) > cut) out.push_back({monomial_name(kQ4Monomials[i]), d.q4[i]});
    return out;
}

bool quadratic_hypothesis(const Mat3& a, double tol) { return q4_violations(a, tol).empty(); }

int TorusTangencySet::region_of(const Vec3& x, double tol) const {
    const double side = dot(plane_normal, x);
    if (std::abs(x[2]) <= tol || std::abs(side) <= tol) return 0;
    if (x[2] > 0.0) return side > 0.0 ? 1 : 2;
    return side > 0.0 ? 3 : 4;
}

bool TorusTangencySet::on_singular_circle(const Vec3& x, double tol) const {
    return std::abs(x[2]) <= tol;
}

TorusTangencySet torus_tangency_set(const Mat3& a, double tol) {
    if (const auto bad = q4_violations(a, tol); !bad.empty()) {
        std::string msg = "X sigma_2 is not quadratic; nonzero q4 coefficients:";
        for (const auto& v : bad) msg += " " + v.monomial;
        throw Error(ErrorKind::HypothesisViolation, msg);
    }
    const double a31 = a(2, 0);
    const double a32 = a(2, 1);
    const double h = std::hypot(a31, a32);
    if (h <= tol * std::max(1.0, frobenius_norm(a)))
        throw Error(ErrorKind::DegenerateTangency,
                    "a31 = a32 = 0: X sigma_2 vanishes identically on the torus");

    TorusTangencySet set;
    set.plane_normal = Vec3{a31 / h, a32 / h, 0.0};
    const Vec3 e3{0.0, 0.0, 1.0};
    const Vec3 d = cross(e3, set.plane_normal);  // in-plane horizontal direction
    set.c1 = {Vec3{}, e3, kTorusMajorRadius - kTorusMinorRadius, "C1"};
    set.c2 = {Vec3{}, e3, kTorusMajorRadius + kTorusMinorRadius, "C2"};
    set.c3 = {kTorusMajorRadius * d, set.plane_normal, kTorusMinorRadius, "C3"};
    set.c4 = {-kTorusMajorRadius * d, set.plane_normal, kTorusMinorRadius, "C4"};
    set.crossings = {(kTorusMajorRadius - kTorusMinorRadius) * d,
                     (kTorusMajorRadius + kTorusMinorRadius) * d,
                     -(kTorusMajorRadius - kTorusMinorRadius) * d,
                     -(kTorusMajorRadius + kTorusMinorRadius) * d};
    return set;
}

}  // namespace filippov
