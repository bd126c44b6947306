#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/inelastic.hpp"
#include "filippov/manifolds.hpp"
#include "filippov/polynomial.hpp"

namespace filippov {

inline constexpr double kDefaultTangencyTol = 1e-9;

// ---------------------------------------------------------------------------
// Lie derivatives and region labels

/// X^k sigma as a polynomial, k >= 1, for X(x) = Ax.
Poly3 lie_polynomial(const Mat3& a, ManifoldKind kind, int order);

/// X^k sigma(x), k in {1, 2, 3}.
double lie_derivative(const Mat3& a, ManifoldKind kind, const Vec3& x, int order);

/// Zero threshold for X^k sigma: tol * max(1, ||A||)^k * max(1, |x|^4).
double tangency_threshold(const Mat3& a, const Vec3& x, double tol, int order = 1);

enum class RegionKind { Sewing, Escape, Sliding, Tangency };
enum class TangencyOrder { Quadratic, Cubic, Higher };

struct RegionLabel {
    RegionKind kind = RegionKind::Sliding;
    TangencyOrder order = TangencyOrder::Quadratic;  // meaningful for Tangency only

    friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

std::string_view to_string(RegionKind kind);
std::string_view to_string(TangencyOrder order);
std::string to_string(const RegionLabel& label);

/// Labels a manifold point by the signs of X sigma and Y sigma; at a tangency
/// the order comes from the higher Lie derivatives of the tangent field.
RegionLabel classify_point(const InelasticPair& pair, const Vec3& x,
                           double tol = kDefaultTangencyTol);

// ---------------------------------------------------------------------------
// Sphere

/// Q = A + A^T, so that X sigma_1(x) = x^T Q x.
SymForm3 quadratic_form_Q(const Mat3& a);

enum class SphereConfiguration { Empty, TwoPoints, OneGreatCircle, TwoCrossingCircles, TwoDisjointLoops };

std::string_view to_string(SphereConfiguration c);

/// Configuration of {x^T Q x = 0} on the unit sphere implied by the inertia.
/// Throws Error(ZeroForm) for the zero form.
SphereConfiguration configuration_for(const Inertia& in);

struct SampledLoop {
    std::string label;
    std::vector<Vec3> points;
};

struct TangencyClassification {
    Inertia inertia;
    SphereConfiguration configuration = SphereConfiguration::Empty;
    std::vector<CircleCurve> circles;  // great circles, exact
    std::vector<SampledLoop> loops;    // cone-sphere loops, 512 samples each
    std::vector<Vec3> points;          // isolated tangency points

    std::size_t curve_count() const { return circles.size() + loops.size(); }
};

inline constexpr std::size_t kLoopSamples = 512;

TangencyClassification classify_sphere_tangency(const SymForm3& q, double tol = kDefaultTangencyTol);

// ---------------------------------------------------------------------------
// Torus

/// X sigma_2 = q2 + q4. Monomial orderings are given by kQ2Monomials and
/// kQ4Monomials (exponents of x1, x2, x3).
struct TorusDecomposition {
    std::array<double, 6> q2{};
    std::array<double, 15> q4{};

    double evaluate_q2(const Vec3& x) const;
    double evaluate_q4(const Vec3& x) const;
};

inline constexpr std::array<std::array<int, 3>, 6> kQ2Monomials{
    {{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}}};

inline constexpr std::array<std::array<int, 3>, 15> kQ4Monomials{{{4, 0, 0},
                                                                  {3, 1, 0},
                                                                  {2, 2, 0},
                                                                  {1, 3, 0},
                                                                  {0, 4, 0},
                                                                  {3, 0, 1},
                                                                  {2, 1, 1},
                                                                  {1, 2, 1},
                                                                  {0, 3, 1},
                                                                  {2, 0, 2},
                                                                  {1, 1, 2},
                                                                  {0, 2, 2},
                                                                  {1, 0, 3},
                                                                  {0, 1, 3},
                                                                  {0, 0, 4}}};

/// e.g. "x1^3*x2"
std::string monomial_name(const std::array<int, 3>& exponents);

TorusDecomposition torus_q2_q4(const Mat3& a);

struct CoefficientViolation {
    std::string monomial;
    double value = 0.0;
};

/// q4 coefficients exceeding tol * max(1, ||A||).
std::vector<CoefficientViolation> q4_violations(const Mat3& a, double tol = kDefaultTangencyTol);

/// True iff X sigma_2 is quadratic (q4 vanishes), i.e. A + A^T = 0.
bool quadratic_hypothesis(const Mat3& a, double tol = kDefaultTangencyTol);

/// Tangency set of a skew field on the torus: C1, C2 (radii 1 and 3 in
/// x3 = 0) and the two minor circles C3, C4 cut by a31 x1 + a32 x2 = 0.
struct TorusTangencySet {
    CircleCurve c1, c2, c3, c4;
    Vec3 plane_normal;                // unit normal of the C3/C4 plane
    std::array<Vec3, 4> crossings{};  // (C3 u C4) n (C1 u C2)

    std::array<const CircleCurve*, 4> circles() const { return {&c1, &c2, &c3, &c4}; }

    /// 1..4 for R1..R4 (R1, R2 in x3 > 0; R3, R4 in x3 < 0; odd indices on the
    /// positive side of the C3/C4 plane), 0 on a tangency circle.
    int region_of(const Vec3& x, double tol = 1e-12) const;
    /// True if x lies on C1 or C2 (x3 = 0 on the torus).
    bool on_singular_circle(const Vec3& x, double tol = 1e-12) const;
};

/// Throws Error(HypothesisViolation) when q4 does not vanish and
/// Error(DegenerateTangency) when a31 = a32 = 0 (X sigma_2 identically zero).
TorusTangencySet torus_tangency_set(const Mat3& a, double tol = kDefaultTangencyTol);

}  // namespace filippov
