#include "filippov/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "filippov/errors.hpp"
#include "filippov/roots.hpp"

namespace filippov {

std::string_view to_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::FreeAbove: return "FreeAbove";
        case SegmentKind::FreeBelow: return "FreeBelow";
        case SegmentKind::Sliding: return "Sliding";
        case SegmentKind::CrossingEvent: return "CrossingEvent";
        case SegmentKind::TangencyStop: return "TangencyStop";
        case SegmentKind::SingularCircleStop: return "SingularCircleStop";
    }
    return "?";
}

std::string_view to_string(Termination reason) {
    switch (reason) {
        case Termination::TimeLimit: return "TimeLimit";
        case Termination::TangencyBoundary: return "TangencyBoundary";
        case Termination::SingularCircle: return "SingularCircle";
        case Termination::Equilibrium: return "Equilibrium";
    }
    return "?";
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::ManifoldCrossing: return "ManifoldCrossing";
        case EventKind::TangencyCrossing: return "TangencyCrossing";
        case EventKind::TangencyStop: return "TangencyStop";
        case EventKind::SingularCircle: return "SingularCircle";
        case EventKind::Equilibrium: return "Equilibrium";
    }
    return "?";
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

constexpr double kOnManifold = 1e-10;

}  // namespace

// ---------------------------------------------------------------------------
// Free flight

CrossingResult first_crossing_from(const Mat3& a, ManifoldKind kind, const Vec3& x0, double t_max,
                                   int side) {
    if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "first_crossing: t_max must be positive");
    side = side >= 0 ? 1 : -1;
    const double h = std::min(0.01, t_max / 1000.0);
    const auto n = static_cast<std::size_t>(std::ceil(t_max / h));
    const auto sig = [&](double t) { return sigma(kind, expm_apply(a, t, x0)); };

    CrossingResult out;
    double t_prev = 0.0;
    double s_prev = sigma(kind, x0);
    double s_prev2 = s_prev;
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = std::min(static_cast<double>(k) * h, t_max);
        const double s = sig(t);
        if (sign_of(s) != side) {
            double lo = t_prev;
            double hi = t;
            double mid = hi;
            for (int it = 0; it < 200; ++it) {
                mid = 0.5 * (lo + hi);
                const double sm = sig(mid);
                if (std::abs(sm) <= 1e-12 || mid <= lo || mid >= hi) break;
                (sign_of(sm) == side ? lo : hi) = mid;
            }
            out.t = mid;
            out.x = expm_apply(a, mid, x0);
            return out;
        }
        // A sampled local minimum of |sigma| close to zero: possible graze.
        if (k >= 2 && std::abs(s_prev) <= std::abs(s_prev2) && std::abs(s_prev) <= std::abs(s) &&
            std::abs(s_prev) < 1e-6)
            out.graze_advisory = true;
        s_prev2 = s_prev;
        s_prev = s;
        t_prev = t;
    }
    return out;
}

CrossingResult first_crossing(const Mat3& a, ManifoldKind kind, const Vec3& x0, double t_max) {
    const double s0 = sigma(kind, x0);
    if (s0 == 0.0)
        throw Error(ErrorKind::InvalidArgument, "first_crossing: start lies on the manifold");
    return first_crossing_from(a, kind, x0, t_max, sign_of(s0));
}

// ---------------------------------------------------------------------------
// Sliding

bool on_singular_tangency_circle(const InelasticPair& pair, const Vec3& x, double tol) {
    return pair.kind() == ManifoldKind::Torus && std::abs(x[2]) <= tol &&
           quadratic_hypothesis(pair.a());
}

double transversality_angle(const InelasticPair& pair, const Vec3& x) {
    const Vec3 v = mean_field(pair.a(), pair.b()) * x;
    const Vec3 gs = grad_sigma(pair.kind(), x);
    const Vec3 gx = lie_polynomial(pair.a(), pair.kind(), 1).gradient(x);
    const Vec3 tangent = cross(gs, gx);
    const double nv = norm(v);
    const double nt = norm(tangent);
    if (nv == 0.0 || !(nt > 1e-12 * norm(gs) * norm(gx))) return 0.0;
    const double s = std::min(1.0, norm(cross(v, tangent)) / (nv * nt));
    return std::asin(s);
}

SlidingRun integrate_sliding(const InelasticPair& pair, const Vec3& x0, double T,
                             std::size_t n_samples, TangencyPolicy policy, double tol) {
    if (!(T >= 0.0)) throw Error(ErrorKind::InvalidArgument, "integrate_sliding: T must be >= 0");
    const SlidingRotation rot = sliding_data(pair);
    if (rot.trivial)
        throw Error(ErrorKind::TrivialField, "integrate_sliding: the sliding field vanishes identically");

    const ManifoldKind kind = pair.kind();
    const Vec3 start = std::abs(sigma(kind, x0)) > kOnManifold ? project_to_manifold(kind, x0) : x0;

    SlidingRun run;
    run.segment.kind = SegmentKind::Sliding;
    run.segment.field = "S";
    run.segment.samples.push_back({0.0, start});

    const auto stop_here = [&](SegmentKind why, EventKind ev) {
        run.stop = why;
        run.events.push_back({ev, 0.0, start, classify_point(pair, start, tol), 0.0});
        return run;
    };

    if (norm(rot.generator * start) <= 1e-12 * pair.scale()) {
        run.equilibrium = true;
        run.events.push_back({EventKind::Equilibrium, 0.0, start, classify_point(pair, start, tol), 0.0});
        return run;
    }
    if (on_singular_tangency_circle(pair, start))
        return stop_here(SegmentKind::SingularCircleStop, EventKind::SingularCircle);

    const Mat3& a = pair.a();
    const auto g = [&](double t) {
        const Vec3 x = rot.flow(start, t);
        return dot(a * x, grad_sigma(kind, x));
    };
    const double zero_tol = tangency_threshold(a, start, tol);

    double t_end = T;
    std::vector<double> event_times;
    const auto handle_tangency = [&](double t, bool graze) -> bool {
        const Vec3 x = rot.flow(start, t);
        const double angle = graze ? 0.0 : transversality_angle(pair, x);
        const RegionLabel label = classify_point(pair, x, tol);
        if (policy == TangencyPolicy::ConcatenateTransversal && !(angle > kTransversalityAngle)) {
            run.events.push_back({EventKind::TangencyStop, t, x, label, angle});
            run.stop = SegmentKind::TangencyStop;
            t_end = t;
            return false;
        }
        run.events.push_back({EventKind::TangencyCrossing, t, x, label, angle});
        event_times.push_back(t);
        return true;
    };

    bool running = true;
    if (std::abs(g(0.0)) <= zero_tol) running = handle_tangency(0.0, false);

    if (running && T > 0.0) {
        const double revolutions = T / rot.period();
        const auto n = static_cast<std::size_t>(
            std::clamp(std::ceil(1024.0 * revolutions), 64.0, 4.0e6));
        for (const ScalarRoot& root : find_roots(g, 0.0, T, n, zero_tol)) {
            if (root.t <= 1e-12 * std::max(1.0, T)) continue;  // handled at t = 0
            if (!handle_tangency(root.t, root.graze)) break;
        }
    }

    run.segment.samples.clear();
    std::vector<double> times;
    const std::size_t n = std::max<std::size_t>(n_samples, 1);
    for (std::size_t k = 0; k <= n; ++k)
        times.push_back(t_end * static_cast<double>(k) / static_cast<double>(n));
    for (double t : event_times)
        if (t <= t_end) times.push_back(t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [&](double l, double r) { return r - l <= 1e-12 * std::max(1.0, t_end); }),
                times.end());
    for (double t : times) {
        Vec3 x = rot.flow(start, t);
        if (std::abs(sigma(kind, x)) > kOnManifold) x = project_to_manifold(kind, x);
        run.segment.samples.push_back({t, x});
    }
    run.segment.t_end = run.segment.samples.back().t;
    return run;
}

// ---------------------------------------------------------------------------
// Concatenated trajectories

namespace {

TrajectorySegment free_segment(const Mat3& field, double t0, const Vec3& x0, double duration,
                               std::size_t n, int side) {
    TrajectorySegment seg;
    seg.kind = side > 0 ? SegmentKind::FreeAbove : SegmentKind::FreeBelow;
    seg.field = side > 0 ? "X" : "Y";
    seg.t_start = t0;
    seg.t_end = t0 + duration;
    n = std::max<std::size_t>(n, 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double dt = duration * static_cast<double>(k) / static_cast<double>(n);
        seg.samples.push_back({t0 + dt, expm_apply(field, dt, x0)});
    }
    return seg;
}

TrajectorySegment point_segment(SegmentKind kind, double t, const Vec3& x, std::string field) {
    TrajectorySegment seg;
    seg.kind = kind;
    seg.t_start = seg.t_end = t;
    seg.samples.push_back({t, x});
    seg.field = std::move(field);
    return seg;
}

}  // namespace

PiecewiseTrajectory simulate(const InelasticPair& pair, const Vec3& x0, double t_max,
                             const SimulationOptions& opts) {
    if (!x0.is_finite() || !(t_max > 0.0))
        throw Error(ErrorKind::InvalidArgument, "simulate: need a finite start and t_max > 0");

    const ManifoldKind kind = pair.kind();
    PiecewiseTrajectory traj;
    double t = 0.0;
    Vec3 x = x0;
    int free_side = 0;  // nonzero: leave the manifold towards this side

    for (int guard = 0; guard < 64; ++guard) {
        const double s = sigma(kind, x);
        if (std::abs(s) > kOnManifold || free_side != 0) {
            const int side = free_side != 0 ? free_side : sign_of(s);
            free_side = 0;
            const Mat3& field = side > 0 ? pair.a() : pair.b();
            const double remaining = t_max - t;
            const CrossingResult hit = first_crossing_from(field, kind, x, remaining, side);
            if (hit.graze_advisory)
                traj.advisories.push_back("near-tangent approach to the manifold during free flight at t=" +
                                          std::to_string(t));
            if (!hit.t) {
                traj.segments.push_back(free_segment(field, t, x, remaining, opts.samples_per_segment, side));
                traj.termination = Termination::TimeLimit;
                return traj;
            }
            traj.segments.push_back(free_segment(field, t, x, *hit.t, opts.samples_per_segment, side));
            t += *hit.t;
            x = project_to_manifold(kind, hit.x);
            traj.segments.back().samples.back().x = x;
            if (t >= t_max) {
                traj.termination = Termination::TimeLimit;
                return traj;
            }
            continue;
        }

        const RegionLabel label = classify_point(pair, x, opts.tol);
        if (label.kind == RegionKind::Sewing) {
            const Vec3 g = grad_sigma(kind, x);
            free_side = dot(pair.a() * x, g) > 0.0 ? 1 : -1;
            traj.events.push_back({EventKind::ManifoldCrossing, t, x, label, 0.0});
            traj.segments.push_back(point_segment(SegmentKind::CrossingEvent, t, x, free_side > 0 ? "X" : "Y"));
            continue;
        }

        const SlidingRotation rot = sliding_data(pair);
        if (rot.trivial) {
            traj.events.push_back({EventKind::Equilibrium, t, x, label, 0.0});
            traj.segments.push_back(point_segment(SegmentKind::Sliding, t, x, "S"));
            traj.termination = Termination::Equilibrium;
            return traj;
        }

        SlidingRun run = integrate_sliding(pair, x, t_max - t, opts.samples_per_segment, opts.policy, opts.tol);
        for (auto& smp : run.segment.samples) smp.t += t;
        run.segment.t_start = t;
        run.segment.t_end += t;
        for (auto& ev : run.events) ev.t += t;
        traj.events.insert(traj.events.end(), run.events.begin(), run.events.end());
        const TrajectorySample last = run.segment.samples.back();
        traj.segments.push_back(std::move(run.segment));

        if (run.equilibrium) {
            traj.termination = Termination::Equilibrium;
        } else if (run.stop == SegmentKind::TangencyStop) {
            traj.segments.push_back(point_segment(SegmentKind::TangencyStop, last.t, last.x, "S"));
            traj.termination = Termination::TangencyBoundary;
        } else if (run.stop == SegmentKind::SingularCircleStop) {
            traj.segments.push_back(point_segment(SegmentKind::SingularCircleStop, last.t, last.x, "S"));
            traj.termination = Termination::SingularCircle;
        } else {
            traj.termination = Termination::TimeLimit;
        }
        return traj;
    }
    traj.advisories.push_back("segment limit reached");
    traj.termination = Termination::TangencyBoundary;
    return traj;
}

ClosureReport closure_report(const TrajectorySegment& seg, const SlidingRotation& rotation, double tol) {
    if (rotation.trivial)
        throw Error(ErrorKind::TrivialField, "closure_report: the sliding field vanishes identically");
    if (seg.samples.empty()) throw Error(ErrorKind::InvalidArgument, "closure_report: empty segment");

    ClosureReport rep;
    rep.period = rotation.period();
    rep.normal = rotation.normal;
    const TrajectorySample& first = seg.samples.front();

    rep.return_distance = norm(expm_apply(rotation.generator, rep.period, first.x) - first.x);
    const TrajectorySample& last = seg.samples.back();
    if (std::abs(last.t - first.t - rep.period) <= 1e-9 * rep.period)
        rep.return_distance = std::max(rep.return_distance, norm(last.x - first.x));

    for (const auto& smp : seg.samples)
        rep.max_plane_deviation =
            std::max(rep.max_plane_deviation, std::abs(dot(smp.x - first.x, rep.normal)));
    rep.closed = rep.return_distance <= tol && rep.period > 0.0;
    return rep;
}

}  // namespace filippov
