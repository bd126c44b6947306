#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/inelastic.hpp"
#include "filippov/sliding.hpp"
#include "filippov/tangency.hpp"

namespace filippov {

enum class SegmentKind { FreeAbove, FreeBelow, Sliding, CrossingEvent, TangencyStop, SingularCircleStop };
enum class Termination { TimeLimit, TangencyBoundary, SingularCircle, Equilibrium };
enum class EventKind { ManifoldCrossing, TangencyCrossing, TangencyStop, SingularCircle, Equilibrium };

std::string_view to_string(SegmentKind kind);
std::string_view to_string(Termination reason);
std::string_view to_string(EventKind kind);

struct TrajectorySample {
    double t = 0.0;
    Vec3 x;
};

struct TrajectorySegment {
    SegmentKind kind = SegmentKind::Sliding;
    double t_start = 0.0;
    double t_end = 0.0;
    std::vector<TrajectorySample> samples;
    std::string field;  // "X", "Y" or "S"
};

struct TrajectoryEvent {
    EventKind kind = EventKind::ManifoldCrossing;
    double t = 0.0;
    Vec3 x;
    RegionLabel label;
    double transversality = 0.0;  // angle (rad) between the flow and the tangency curve
};

struct PiecewiseTrajectory {
    std::vector<TrajectorySegment> segments;
    std::vector<TrajectoryEvent> events;
    Termination termination = Termination::TimeLimit;
    std::vector<std::string> advisories;
};

// ---------------------------------------------------------------------------
// Free flight

struct CrossingResult {
    std::optional<double> t;
    Vec3 x;
    /// |sigma| dipped below 1e-6 without a sign change: a graze may have been missed.
    bool graze_advisory = false;
};

/// Smallest t in (0, t_max] with sigma(exp(At) x0) = 0, by sampling with step
/// min(0.01, t_max / 1000) and bisecting the first sign change to |sigma| <= 1e-12.
CrossingResult first_crossing(const Mat3& a, ManifoldKind kind, const Vec3& x0, double t_max);

/// As first_crossing, for a start on or near the manifold that leaves towards
/// the side sign(side) (+1 above, -1 below).
CrossingResult first_crossing_from(const Mat3& a, ManifoldKind kind, const Vec3& x0, double t_max,
                                   int side);

// ---------------------------------------------------------------------------
// Sliding

enum class TangencyPolicy {
    /// Continue through a tangency point when the sliding flow crosses the
    /// tangency curve transversally (angle > 1e-4 rad); stop otherwise.
    ConcatenateTransversal,
    /// Follow the continuous extension (A + B) / 2 x through every tangency.
    ExtendedField,
};

inline constexpr double kTransversalityAngle = 1e-4;

struct SlidingRun {
    TrajectorySegment segment;
    std::vector<TrajectoryEvent> events;
    std::optional<SegmentKind> stop;  // TangencyStop or SingularCircleStop
    bool equilibrium = false;
};

/// Exact (Rodrigues) sliding flow from x0 over [0, T]. Throws Error(TrivialField)
/// when the sliding field vanishes.
SlidingRun integrate_sliding(const InelasticPair& pair, const Vec3& x0, double T,
                             std::size_t n_samples,
                             TangencyPolicy policy = TangencyPolicy::ConcatenateTransversal,
                             double tol = kDefaultTangencyTol);

/// Angle (rad) between the sliding velocity at a tangency point and the
/// tangency curve through it; 0 at singular points of the curve.
double transversality_angle(const InelasticPair& pair, const Vec3& x);

/// Torus points on C1 or C2 for a skew field: curves the sliding flow cannot leave.
bool on_singular_tangency_circle(const InelasticPair& pair, const Vec3& x, double tol = 1e-9);

// ---------------------------------------------------------------------------

struct SimulationOptions {
    std::size_t samples_per_segment = 256;
    TangencyPolicy policy = TangencyPolicy::ConcatenateTransversal;
    double tol = kDefaultTangencyTol;
};

/// Concatenated Filippov trajectory of Z = (X, Y) from x0 over [0, t_max].
PiecewiseTrajectory simulate(const InelasticPair& pair, const Vec3& x0, double t_max,
                             const SimulationOptions& opts = {});

struct ClosureReport {
    bool closed = false;
    double period = 0.0;
    double return_distance = 0.0;
    Vec3 normal;
    double max_plane_deviation = 0.0;
};

/// Return distance after one period (computed through exp(S P) x0, independently of
/// the sampled rotation) and deviation of the samples from the plane through
/// x(0) orthogonal to the rotation axis. Throws Error(TrivialField) when the
/// rotation is trivial.
ClosureReport closure_report(const TrajectorySegment& seg, const SlidingRotation& rotation,
                             double tol);

}  // namespace filippov
