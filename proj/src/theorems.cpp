#include "filippov/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>

#include "filippov/errors.hpp"
#include "filippov/sliding.hpp"

namespace filippov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_sigma_on(const TrajectorySegment& seg, ManifoldKind kind) {
    double worst = 0.0;
    for (const auto& s : seg.samples) worst = std::max(worst, std::abs(sigma(kind, s.x)));
    return worst;
}

// First-order distance on the sphere from x to the curve x^T Q x = 0; zero at
// singular points of the curve.
double distance_to_tangency_curve(const SymForm3& q, const Vec3& x) {
    const double f = q.evaluate(x);
    const Vec3 g = 2.0 * (q.matrix() * x) - (2.0 * f) * x;
    const double ng = norm(g);
    return ng > 0.0 ? std::abs(f) / ng : 0.0;
}

Vec3 random_sphere_point(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        const double n = norm(v);
        if (n > 1e-6) return v / n;
    }
}

Vec3 torus_point(double u, double v) {
    const double r = kTorusMajorRadius + kTorusMinorRadius * std::cos(u);
    return {r * std::cos(v), r * std::sin(v), kTorusMinorRadius * std::sin(u)};
}

}  // namespace

bool TheoremAReport::structure_ok(const TheoremTolerances& tol) const {
    return !trivial && skew_residual <= 1e-12 && equilibrium_norm_error <= 1e-12 &&
           equilibrium_residual <= tol.equilibrium && axis_alignment <= 1e-12;
}

bool TheoremAReport::ok(const TheoremTolerances& tol) const {
    return structure_ok(tol) && passed == trials && failures.empty();
}

TheoremAReport verify_theorem_a(const Mat3& a, const FreeParameters& free, std::size_t trials,
                                std::uint64_t seed, double tol, const TheoremTolerances& tols) {
    if (trials == 0) throw Error(ErrorKind::InvalidArgument, "verify_theorem_a: trials must be >= 1");
    const InelasticPair pair(ManifoldKind::Sphere, a, free);
    const SlidingRotation rot = sphere_sliding_data(pair);

    TheoremAReport rep;
    rep.trivial = rot.trivial;
    if (rot.trivial) return rep;

    rep.rate = rot.rate;
    rep.period = rot.period();
    rep.normal = rot.normal;
    rep.p_plus = rot.equilibria[0];
    rep.p_minus = rot.equilibria[1];
    rep.skew_residual = frobenius_norm(rot.generator + rot.generator.transpose());
    for (const Vec3& p : rot.equilibria) {
        rep.equilibrium_norm_error = std::max(rep.equilibrium_norm_error, std::abs(norm(p) - 1.0));
        rep.equilibrium_residual = std::max(rep.equilibrium_residual, norm(rot.generator * p));
    }
    const Vec3 chord = rep.p_plus - rep.p_minus;
    rep.axis_alignment = norm(cross(rep.normal, chord)) / norm(chord);

    const SymForm3 q = quadratic_form_Q(a);
    const double qscale = std::max(1.0, q.spectral_radius());
    rep.zero_form = q.spectral_radius() <= kDefaultTangencyTol * qscale;
    const double cos_excl = std::cos(tols.exclusion);

    std::mt19937_64 rng(seed);
    rep.trials = trials;
    for (std::size_t k = 0; k < trials; ++k) {
        Vec3 x0;
        for (std::size_t attempt = 0;; ++attempt) {
            x0 = random_sphere_point(rng);
            const bool near_equilibrium = std::abs(dot(x0, rot.normal)) >= cos_excl;
            const bool near_curve = !rep.zero_form && distance_to_tangency_curve(q, x0) < tols.exclusion;
            if (!near_equilibrium && !near_curve) break;
            if (attempt > 10000)
                throw Error(ErrorKind::NoConvergence, "verify_theorem_a: no admissible start found");
        }

        const SlidingRun run = integrate_sliding(pair, x0, rep.period, 256, TangencyPolicy::ExtendedField);
        const ClosureReport cr = closure_report(run.segment, rot, tol);
        rep.worst_return_distance = std::max(rep.worst_return_distance, cr.return_distance);
        rep.worst_plane_deviation = std::max(rep.worst_plane_deviation, cr.max_plane_deviation);

        std::string reason;
        if (run.stop || run.equilibrium) reason = "sliding run stopped before one period";
        else if (!cr.closed) reason = "return distance above tolerance";
        else if (cr.max_plane_deviation > tols.plane) reason = "orbit leaves its invariant plane";
        else if (max_sigma_on(run.segment, ManifoldKind::Sphere) > 1e-8) reason = "orbit leaves the sphere";
        if (reason.empty()) ++rep.passed;
        else rep.failures.push_back({k, x0, reason});
    }
    return rep;
}

bool TheoremBReport::structure_ok(const TheoremTolerances& tol) const {
    return !trivial && tangency.has_value() && worst_circle_sigma <= tol.curve &&
           worst_circle_lie <= tol.curve && std::abs(period - expected_period) <= 1e-8 * expected_period &&
           singular_stops == singular_starts;
}

bool TheoremBReport::ok(const TheoremTolerances& tol) const {
    return structure_ok(tol) && passed == trials && failures.empty();
}

TheoremBReport verify_theorem_b(const Mat3& a, double b21, std::size_t trials, std::uint64_t seed,
                                double tol, const TheoremTolerances& tols) {
    if (trials == 0) throw Error(ErrorKind::InvalidArgument, "verify_theorem_b: trials must be >= 1");
    TheoremBReport rep;
    rep.tangency = torus_tangency_set(a);
    const InelasticPair pair = InelasticPair::torus(a, b21);
    const SlidingRotation rot = torus_sliding_data(pair);
    rep.trivial = rot.trivial;

    for (const CircleCurve* c : rep.tangency->circles()) {
        for (const Vec3& p : c->sample(256)) {
            rep.worst_circle_sigma = std::max(rep.worst_circle_sigma, std::abs(sigma(ManifoldKind::Torus, p)));
            rep.worst_circle_lie =
                std::max(rep.worst_circle_lie, std::abs(lie_derivative(a, ManifoldKind::Torus, p, 1)));
        }
    }
    if (rot.trivial) return rep;

    rep.rate = rot.rate;
    rep.period = rot.period();
    rep.expected_period = kTwoPi / std::abs(0.5 * (a(1, 0) + b21));
    const Vec3 plane_n = rep.tangency->plane_normal;
    const double min_height = std::sin(tols.exclusion);
    rep.min_transversal_speed = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    rep.trials = trials;
    for (std::size_t k = 0; k < trials; ++k) {
        Vec3 x0;
        do {
            x0 = torus_point(angle(rng), angle(rng));
        } while (std::abs(x0[2]) < min_height);

        const SlidingRun run = integrate_sliding(pair, x0, rep.period, 256, TangencyPolicy::ConcatenateTransversal);
        const ClosureReport cr = closure_report(run.segment, rot, tol);
        rep.worst_return_distance = std::max(rep.worst_return_distance, cr.return_distance);
        rep.worst_plane_deviation = std::max(rep.worst_plane_deviation, cr.max_plane_deviation);

        const double r2_0 = x0[0] * x0[0] + x0[1] * x0[1];
        double dx3 = 0.0;
        double dr2 = 0.0;
        for (const auto& s : run.segment.samples) {
            dx3 = std::max(dx3, std::abs(s.x[2] - x0[2]));
            dr2 = std::max(dr2, std::abs(s.x[0] * s.x[0] + s.x[1] * s.x[1] - r2_0));
        }
        rep.worst_x3_drift = std::max(rep.worst_x3_drift, dx3);
        rep.worst_r2_drift = std::max(rep.worst_r2_drift, dr2);

        std::vector<double> crossing_times;
        bool slow_crossing = false;
        for (const TrajectoryEvent& ev : run.events) {
            if (ev.kind != EventKind::TangencyCrossing) continue;
            if (ev.t >= rep.period * (1.0 - 1e-9) && !crossing_times.empty() && crossing_times.front() <= 1e-9 * rep.period)
                continue;  // the start crossing seen again after one revolution
            crossing_times.push_back(ev.t);
            const Vec3 v = rot.generator * ev.x;
            const double speed = std::abs(dot(v, plane_n)) / norm(v);
            rep.min_transversal_speed = std::min(rep.min_transversal_speed, speed);
            if (!(speed > kTransversalityAngle)) slow_crossing = true;
        }

        std::string reason;
        if (run.stop || run.equilibrium) reason = "sliding run stopped before one period";
        else if (!cr.closed) reason = "return distance above tolerance";
        else if (dx3 > tols.conservation || dr2 > tols.conservation) reason = "x3 or x1^2 + x2^2 not conserved";
        else if (crossing_times.size() != 2) reason = "orbit does not cross the C3/C4 plane twice";
        else if (slow_crossing) reason = "crossing of the C3/C4 plane is not transversal";
        if (reason.empty()) ++rep.passed;
        else rep.failures.push_back({k, x0, reason});
    }
    if (!std::isfinite(rep.min_transversal_speed)) rep.min_transversal_speed = 0.0;

    for (const CircleCurve* c : {&rep.tangency->c1, &rep.tangency->c2}) {
        const Vec3 x0 = c->point(angle(rng));
        const PiecewiseTrajectory traj = simulate(pair, x0, rep.period);
        ++rep.singular_starts;
        if (traj.termination == Termination::SingularCircle) ++rep.singular_stops;
        else rep.failures.push_back({rep.trials, x0, "start on " + c->label + " did not stop"});
    }
    return rep;
}

}  // namespace filippov
