#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "filippov/errors.hpp"
#include "filippov/inelastic.hpp"
#include "filippov/tangency.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace filippov;
using filippov::testing::Rng;

namespace {

const Mat3 kSpiralSphereA{{-1, 0, 0}, {1, -1, 0}, {0, 0, -1}};
const Mat3 kSkewTorusA{{0, 0, -1}, {0, 0, 0}, {1, 0, 0}};

ErrorKind error_kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::InvalidArgument;
}

bool parallel(const Vec3& a, const Vec3& b, double tol) { return norm(cross(a, b)) <= tol * norm(a) * norm(b); }

}  // namespace

TEST(Tangency, LieDerivativeExamples) {
    EXPECT_DOUBLE_EQ(lie_derivative(Mat3::identity(), ManifoldKind::Sphere, {1, 0, 0}, 1), 2.0);
    Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat3 s = filippov::testing::random_skew(rng);
        EXPECT_NEAR(lie_derivative(s, ManifoldKind::Sphere, filippov::testing::random_unit(rng), 1), 0.0, 1e-14);
    }
    EXPECT_DOUBLE_EQ(lie_derivative(kSkewTorusA, ManifoldKind::Torus, {2, 0, 1}, 1), 64.0);
}

TEST(Tangency, LieDerivativeAgreesWithGradientPath) {
    Rng rng(52);
    for (ManifoldKind kind : {ManifoldKind::Sphere, ManifoldKind::Torus}) {
        for (int trial = 0; trial < 500; ++trial) {
            const Mat3 a = filippov::testing::random_matrix(rng);
            const Vec3 x = filippov::testing::random_unit(rng) * filippov::testing::uniform(rng, 0.5, 3.0);
            const double direct = dot(a * x, grad_sigma(kind, x));
            EXPECT_NEAR(lie_derivative(a, kind, x, 1), direct, 1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(Tangency, HigherLieDerivativesMatchFiniteDifferencesAlongTheFlow) {
    // X^2 sigma(x) = d/dt X sigma(exp(At) x) at t = 0.
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat3 a = filippov::testing::random_matrix(rng);
        const Vec3 x = filippov::testing::random_torus_point(rng);
        for (int order : {2, 3}) {
            const double h = 1e-5;
            const double fp = lie_derivative(a, ManifoldKind::Torus, expm_apply(a, h, x), order - 1);
            const double fm = lie_derivative(a, ManifoldKind::Torus, expm_apply(a, -h, x), order - 1);
            const double exact = lie_derivative(a, ManifoldKind::Torus, x, order);
            EXPECT_NEAR(exact, (fp - fm) / (2 * h), 1e-5 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST(Tangency, ClassifyPointExamples) {
    const InelasticPair sphere = InelasticPair::sphere(kSpiralSphereA, 0, 0, 0);
    EXPECT_EQ(classify_point(sphere, {1, 0, 0}).kind, RegionKind::Sliding);
    const InelasticPair torus = InelasticPair::torus(kSkewTorusA, 2);
    const RegionLabel l = classify_point(torus, {3, 0, 0});
    EXPECT_EQ(l.kind, RegionKind::Tangency);
    EXPECT_EQ(l.order, TangencyOrder::Quadratic);
    EXPECT_EQ(to_string(l), "Tangency(Quadratic)");
}

TEST(Tangency, ClassifyPointEscape) {
    const InelasticPair expand = InelasticPair::sphere(Mat3::identity(), 0, 0, 0);
    EXPECT_EQ(classify_point(expand, {0, 1, 0}).kind, RegionKind::Escape);
}

TEST(Tangency, TangencyOrders) {
    // Ax = (x3, 0, 0): X sigma = 2 x1 x3 and X^2 sigma = 2 x3^2, so every
    // derivative vanishes at (0, 1, 0).
    const Mat3 shear{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
    const RegionLabel h = classify_point(InelasticPair::sphere(shear, 0, 0, 0), {0, 1, 0});
    EXPECT_EQ(h.kind, RegionKind::Tangency);
    EXPECT_EQ(h.order, TangencyOrder::Higher);
    // Ax = (x2, x1, 0): X sigma = 4 x1 x2 and X^2 sigma = 4 (x1^2 + x2^2).
    const Mat3 swap{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
    const RegionLabel q = classify_point(InelasticPair::sphere(swap, 0, 0, 0), {1, 0, 0});
    EXPECT_EQ(q.kind, RegionKind::Tangency);
    EXPECT_EQ(q.order, TangencyOrder::Quadratic);
}

TEST(Tangency, QuadraticFormExamples) {
    EXPECT_EQ(quadratic_form_Q(Mat3::identity()).matrix(), 2.0 * Mat3::identity());
    EXPECT_EQ(quadratic_form_Q(Mat3::skew({1, 2, 3})).matrix(), Mat3::zero());
    const Mat3 expected{{-2, 1, 0}, {1, -2, 0}, {0, 0, -2}};
    EXPECT_EQ(quadratic_form_Q(kSpiralSphereA).matrix(), expected);
}

TEST(Tangency, QuadraticFormIsTwiceTheFieldProjection) {
    Rng rng(54);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat3 a = filippov::testing::random_matrix(rng);
        const Vec3 x = filippov::testing::random_unit(rng) * 2.0;
        EXPECT_NEAR(quadratic_form_Q(a).evaluate(x), 2.0 * dot(a * x, x), 1e-12 * std::max(1.0, dot(x, x)));
    }
}

TEST(Tangency, NegativeDefiniteFormHasNoTangencies) {
    const TangencyClassification c = classify_sphere_tangency(quadratic_form_Q(kSpiralSphereA));
    EXPECT_EQ(c.configuration, SphereConfiguration::Empty);
    EXPECT_EQ(c.curve_count(), 0u);
    EXPECT_TRUE(c.points.empty());
}

TEST(Tangency, RankOneFormGivesOneGreatCircle) {
    const TangencyClassification c = classify_sphere_tangency(SymForm3(1, 0, 0, 0, 0, 0));
    EXPECT_EQ(c.configuration, SphereConfiguration::OneGreatCircle);
    ASSERT_EQ(c.circles.size(), 1u);
    EXPECT_TRUE(parallel(c.circles[0].normal, {1, 0, 0}, 1e-12));
    EXPECT_EQ(c.circles[0].radius, 1.0);
}

TEST(Tangency, IndefiniteRankTwoGivesCrossingCircles) {
    const TangencyClassification c = classify_sphere_tangency(SymForm3(1, 0, 0, -1, 0, 0));
    EXPECT_EQ(c.configuration, SphereConfiguration::TwoCrossingCircles);
    ASSERT_EQ(c.circles.size(), 2u);
    // planes x1 = x2 and x1 = -x2
    const bool a = parallel(c.circles[0].normal, {1, -1, 0}, 1e-12) && parallel(c.circles[1].normal, {1, 1, 0}, 1e-12);
    const bool b = parallel(c.circles[0].normal, {1, 1, 0}, 1e-12) && parallel(c.circles[1].normal, {1, -1, 0}, 1e-12);
    EXPECT_TRUE(a || b);
}

TEST(Tangency, SemidefiniteRankTwoGivesTwoPoints) {
    const TangencyClassification c = classify_sphere_tangency(SymForm3(1, 0, 0, 2, 0, 0));
    EXPECT_EQ(c.configuration, SphereConfiguration::TwoPoints);
    ASSERT_EQ(c.points.size(), 2u);
    EXPECT_TRUE(parallel(c.points[0], {0, 0, 1}, 1e-12));
    EXPECT_LE(norm(c.points[0] + c.points[1]), 1e-15);
}

TEST(Tangency, ZeroFormIsAnError) {
    EXPECT_EQ(error_kind_of([] { classify_sphere_tangency(quadratic_form_Q(Mat3::skew({1, 0, 0}))); }),
              ErrorKind::ZeroForm);
}

TEST(Tangency, InertiaTable) {
    using C = SphereConfiguration;
    EXPECT_EQ(configuration_for({3, 0, 0}), C::Empty);
    EXPECT_EQ(configuration_for({0, 3, 0}), C::Empty);
    EXPECT_EQ(configuration_for({2, 0, 1}), C::TwoPoints);
    EXPECT_EQ(configuration_for({0, 2, 1}), C::TwoPoints);
    EXPECT_EQ(configuration_for({1, 0, 2}), C::OneGreatCircle);
    EXPECT_EQ(configuration_for({0, 1, 2}), C::OneGreatCircle);
    EXPECT_EQ(configuration_for({1, 1, 1}), C::TwoCrossingCircles);
    EXPECT_EQ(configuration_for({2, 1, 0}), C::TwoDisjointLoops);
    EXPECT_EQ(configuration_for({1, 2, 0}), C::TwoDisjointLoops);
}

TEST(Tangency, ClassifiedCurvesSatisfyBothEquations) {
    Rng rng(55);
    const std::array<Inertia, 9> classes{{{3, 0, 0}, {0, 3, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}, {2, 1, 0}, {1, 2, 0}}};
    for (const Inertia& in : classes) {
        for (int trial = 0; trial < 20; ++trial) {
            const SymForm3 q = filippov::testing::random_form_with_inertia(rng, in);
            const TangencyClassification c = classify_sphere_tangency(q);
            EXPECT_EQ(c.inertia, in);
            for (const CircleCurve& circle : c.circles)
                for (const Vec3& p : circle.sample(256)) {
                    EXPECT_LE(std::abs(sigma(ManifoldKind::Sphere, p)), 1e-9);
                    EXPECT_LE(std::abs(q.evaluate(p)), 1e-9);
                }
            for (const SampledLoop& loop : c.loops) {
                EXPECT_EQ(loop.points.size(), kLoopSamples);
                for (const Vec3& p : loop.points) {
                    EXPECT_LE(std::abs(sigma(ManifoldKind::Sphere, p)), 1e-9);
                    EXPECT_LE(std::abs(q.evaluate(p)), 1e-9);
                }
            }
            for (const Vec3& p : c.points) EXPECT_LE(std::abs(q.evaluate(p)), 1e-9);
        }
    }
}

TEST(Tangency, ConfigurationMatchesGridOracle) {
    Rng rng(56);
    const std::array<Inertia, 9> classes{{{3, 0, 0}, {0, 3, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}, {2, 1, 0}, {1, 2, 0}}};
    for (const Inertia& in : classes) {
        for (int trial = 0; trial < 3; ++trial) {
            const SymForm3 q = filippov::testing::random_form_with_inertia(rng, in);
            const auto expected = filippov::testing::expected_topology(classify_sphere_tangency(q).configuration);
            const auto grid = filippov::testing::quadric_grid_topology(q);
            EXPECT_EQ(grid.zero_components, expected.zero_components) << in.n_plus << in.n_minus << in.n_zero;
            EXPECT_EQ(grid.sign_regions, expected.sign_regions) << in.n_plus << in.n_minus << in.n_zero;
        }
    }
}

TEST(Tangency, GridOracleOnHandPickedForms) {
    using filippov::testing::quadric_grid_topology;
    const auto empty = quadric_grid_topology(SymForm3(1, 0, 0, 1, 0, 1));
    EXPECT_EQ(empty.zero_components, 0u);
    EXPECT_EQ(empty.sign_regions, 1u);
    const auto circle = quadric_grid_topology(SymForm3(0, 0, 0, 0, 0, 1));  // equator through the grid's own rows
    EXPECT_EQ(circle.zero_components, 1u);
    EXPECT_EQ(circle.sign_regions, 2u);
    const auto poles = quadric_grid_topology(SymForm3(1, 0, 0, 1, 0, 0));  // zeros at the poles
    EXPECT_EQ(poles.zero_components, 2u);
    EXPECT_EQ(poles.sign_regions, 1u);
    const auto cone = quadric_grid_topology(SymForm3(1, 0, 0, 1, 0, -0.5));
    EXPECT_EQ(cone.zero_components, 2u);
    EXPECT_EQ(cone.sign_regions, 3u);
}

TEST(Tangency, NegativeDefiniteSphereIsSliding) {
    Rng rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        const SymForm3 q = filippov::testing::random_form_with_inertia(rng, {0, 3, 0});
        const InelasticPair pair(ManifoldKind::Sphere, filippov::testing::matrix_with_form(rng, q),
                                 filippov::testing::random_free(rng));
        for (const Vec3& x : sample_manifold(ManifoldKind::Sphere, 1000, trial)) {
            const Vec3 g = grad_sigma(ManifoldKind::Sphere, x);
            EXPECT_LT(dot(pair.a() * x, g), 0.0);
            EXPECT_GT(dot(pair.b() * x, g), 0.0);
            EXPECT_EQ(classify_point(pair, x).kind, RegionKind::Sliding);
        }
    }
}

TEST(Tangency, TorusDecompositionOfZero) {
    const TorusDecomposition d = torus_q2_q4(Mat3::zero());
    for (double c : d.q2) EXPECT_EQ(c, 0.0);
    for (double c : d.q4) EXPECT_EQ(c, 0.0);
}

TEST(Tangency, TorusDecompositionOfSkewField) {
    Rng rng(58);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat3 a = filippov::testing::random_skew(rng);
        const TorusDecomposition d = torus_q2_q4(a);
        for (double c : d.q4) EXPECT_EQ(c, 0.0);
        for (int k = 0; k < 20; ++k) {
            const Vec3 x = filippov::testing::random_unit(rng) * 2.5;
            const double expected = 32 * a(2, 0) * x[0] * x[2] + 32 * a(2, 1) * x[1] * x[2];
            EXPECT_NEAR(d.evaluate_q2(x), expected, 1e-12 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST(Tangency, TorusDecompositionMatchesGradientEvaluation) {
    Rng rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat3 a = filippov::testing::random_matrix(rng);
        const TorusDecomposition d = torus_q2_q4(a);
        for (int k = 0; k < 100; ++k) {
            const Vec3 x = filippov::testing::random_unit(rng) * filippov::testing::uniform(rng, 0.1, 3.0);
            const double direct = dot(a * x, grad_sigma(ManifoldKind::Torus, x));
            EXPECT_NEAR(d.evaluate_q2(x) + d.evaluate_q4(x), direct, 1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(Tangency, MonomialNames) {
    EXPECT_EQ(monomial_name({3, 1, 0}), "x1^3*x2");
    EXPECT_EQ(monomial_name({0, 0, 4}), "x3^4");
    EXPECT_EQ(monomial_name({1, 1, 2}), "x1*x2*x3^2");
}

TEST(Tangency, QuadraticHypothesisExamples) {
    EXPECT_TRUE(quadratic_hypothesis(Mat3::skew({0.3, -1, 2})));
    EXPECT_FALSE(quadratic_hypothesis(Mat3::identity()));
    EXPECT_TRUE(quadratic_hypothesis(kSkewTorusA));
}

TEST(Tangency, QuadraticHypothesisIffSkew) {
    Rng rng(60);
    const double tol = kDefaultTangencyTol;
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat3 a = filippov::testing::random_matrix(rng);
        EXPECT_EQ(quadratic_hypothesis(a, tol), frobenius_norm(a + a.transpose()) <= tol);
        const Mat3 s = filippov::testing::random_skew(rng);
        EXPECT_EQ(quadratic_hypothesis(s, tol), frobenius_norm(s + s.transpose()) <= tol);
        EXPECT_TRUE(quadratic_hypothesis(s, tol));
    }
}

TEST(Tangency, TorusTangencySetGeometry) {
    const TorusTangencySet set = torus_tangency_set(kSkewTorusA);
    EXPECT_EQ(set.c1.radius, 1.0);
    EXPECT_EQ(set.c2.radius, 3.0);
    EXPECT_EQ(set.c1.normal, (Vec3{0, 0, 1}));
    EXPECT_TRUE(parallel(set.c3.normal, {1, 0, 0}, 1e-15));
    EXPECT_TRUE(parallel(set.c4.normal, {1, 0, 0}, 1e-15));
    EXPECT_NEAR(std::abs(set.c3.center[1]), 2.0, 1e-15);
    EXPECT_NEAR(set.c3.center[1], -set.c4.center[1], 1e-15);
    EXPECT_NEAR(set.c3.center[0], 0.0, 1e-15);
    std::vector<double> ys;
    for (const Vec3& p : set.crossings) {
        EXPECT_NEAR(p[0], 0.0, 1e-15);
        EXPECT_EQ(p[2], 0.0);
        ys.push_back(p[1]);
    }
    std::sort(ys.begin(), ys.end());
    EXPECT_NEAR(ys[0], -3, 1e-15);
    EXPECT_NEAR(ys[1], -1, 1e-15);
    EXPECT_NEAR(ys[2], 1, 1e-15);
    EXPECT_NEAR(ys[3], 3, 1e-15);
}

TEST(Tangency, TorusCirclesSatisfyBothEquations) {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        Mat3 a = filippov::testing::random_skew(rng);
        const TorusTangencySet set = torus_tangency_set(a);
        for (const CircleCurve* c : set.circles())
            for (const Vec3& p : c->sample(128)) {
                EXPECT_LE(std::abs(sigma(ManifoldKind::Torus, p)), 1e-9);
                EXPECT_LE(std::abs(torus_q2_q4(a).evaluate_q2(p)), 1e-9);
                EXPECT_LE(std::abs(lie_derivative(a, ManifoldKind::Torus, p, 1)), 1e-9);
            }
        for (const Vec3& p : set.crossings) {
            EXPECT_LE(std::abs(sigma(ManifoldKind::Torus, p)), 1e-9);
            EXPECT_EQ(set.region_of(p), 0);
        }
    }
}

TEST(Tangency, TorusRegionsFollowSigns) {
    const TorusTangencySet set = torus_tangency_set(kSkewTorusA);  // plane x1 = 0
    Rng rng(62);
    for (int k = 0; k < 1000; ++k) {
        const Vec3 x = filippov::testing::random_torus_point(rng);
        const int r = set.region_of(x);
        const double q2 = 32 * x[0] * x[2];
        ASSERT_NE(r, 0);
        EXPECT_EQ(r == 1 || r == 2, x[2] > 0);
        // R1 and R4 share the sign of q2 (positive here), R2 and R3 the other.
        EXPECT_EQ(r == 1 || r == 4, q2 > 0);
    }
    EXPECT_TRUE(set.on_singular_circle({3, 0, 0}));
    EXPECT_FALSE(set.on_singular_circle({2, 0, 1}));
}

TEST(Tangency, TorusErrors) {
    EXPECT_EQ(error_kind_of([] { torus_tangency_set(Mat3::skew({0, 0, 1})); }), ErrorKind::DegenerateTangency);
    try {
        torus_tangency_set(Mat3::identity());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolation);
        EXPECT_NE(std::string(e.what()).find("x1^4"), std::string::npos);
    }
    const auto bad = q4_violations(Mat3::identity());
    EXPECT_FALSE(bad.empty());
    EXPECT_TRUE(q4_violations(kSkewTorusA).empty());
}
