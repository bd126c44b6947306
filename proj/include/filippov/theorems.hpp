#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/flow.hpp"
#include "filippov/inelastic.hpp"
#include "filippov/tangency.hpp"

namespace filippov {

struct TheoremTolerances {
    double plane = 1e-9;          // deviation from the invariant plane along the axis
    double equilibrium = 1e-12;   // |S p|
    double conservation = 1e-9;   // drift of x3 and x1^2 + x2^2 on the torus
    double curve = 1e-9;          // sigma and X sigma residuals on tangency circles
    double exclusion = 1e-3;      // geodesic distance kept from equilibria and singular sets
};

struct TrialFailure {
    std::size_t trial = 0;
    Vec3 start;
    std::string reason;
};

struct TheoremAReport {
    bool trivial = false;
    bool zero_form = false;  // Q = 0: the whole sphere is tangent, no curve exclusion possible
    double rate = 0.0;
    double period = 0.0;
    Vec3 normal;
    Vec3 p_plus;
    Vec3 p_minus;
    double skew_residual = 0.0;       // ||S + S^T||
    double equilibrium_norm_error = 0.0;
    double equilibrium_residual = 0.0;
    double axis_alignment = 0.0;      // |normal x (p+ - p-)| / |p+ - p-|
    std::size_t trials = 0;
    std::size_t passed = 0;
    double worst_return_distance = 0.0;
    double worst_plane_deviation = 0.0;
    std::vector<TrialFailure> failures;

    bool structure_ok(const TheoremTolerances& tol = {}) const;
    bool ok(const TheoremTolerances& tol = {}) const;
};

/// Sliding dynamics of the sphere companion pair of A: random starts away from
/// p+- and from the tangency curves, each followed for one period with the
/// extended field. tol bounds the return distance.
TheoremAReport verify_theorem_a(const Mat3& a, const FreeParameters& free, std::size_t trials,
                                std::uint64_t seed, double tol, const TheoremTolerances& tols = {});

struct TheoremBReport {
    bool trivial = false;
    double rate = 0.0;
    double period = 0.0;
    double expected_period = 0.0;  // 2 pi / |(a21 + b21) / 2|
    std::optional<TorusTangencySet> tangency;
    double worst_circle_sigma = 0.0;
    double worst_circle_lie = 0.0;
    std::size_t trials = 0;
    std::size_t passed = 0;
    double worst_return_distance = 0.0;
    double worst_x3_drift = 0.0;
    double worst_r2_drift = 0.0;
    double worst_plane_deviation = 0.0;
    double min_transversal_speed = 0.0;  // |<S x, n>| / |S x| at the C3/C4 crossings
    std::size_t singular_starts = 0;
    std::size_t singular_stops = 0;
    std::vector<TrialFailure> failures;

    bool structure_ok(const TheoremTolerances& tol = {}) const;
    bool ok(const TheoremTolerances& tol = {}) const;
};

/// Torus companion pair of a skew A. Throws Error(HypothesisViolation) when
/// X sigma_2 is not quadratic and Error(DegenerateTangency) when a31 = a32 = 0.
TheoremBReport verify_theorem_b(const Mat3& a, double b21, std::size_t trials, std::uint64_t seed,
                                double tol, const TheoremTolerances& tols = {});

}  // namespace filippov
