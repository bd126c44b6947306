#include "filippov/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "filippov/errors.hpp"
#include "filippov/sliding.hpp"
#include "filippov/tangency.hpp"

namespace filippov::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBuildSamples = 1000;
constexpr std::uint64_t kBuildSeed = 1;
constexpr std::size_t kSurfaceRows = 24;
constexpr std::size_t kSurfaceCols = 48;

// Negative zero prints as "-0"; reports use plain 0.
double clean(double x) { return x == 0.0 ? 0.0 : x; }

std::string num(double x) { return fmt::format("{:.17g}", clean(x)); }

std::string vec_text(const Vec3& v) { return fmt::format("({}, {}, {})", num(v[0]), num(v[1]), num(v[2])); }

ojson vec_json(const Vec3& v) { return ojson::array({clean(v[0]), clean(v[1]), clean(v[2])}); }

ojson mat_json(const Mat3& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < 3; ++i) rows.push_back(ojson::array({clean(m(i, 0)), clean(m(i, 1)), clean(m(i, 2))}));
    return rows;
}

ojson circle_json(const CircleCurve& c) {
    ojson j;
    j["label"] = c.label;
    j["center"] = vec_json(c.center);
    j["normal"] = vec_json(c.normal);
    j["radius"] = c.radius;
    return j;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return kUsage;
        case ErrorKind::Overflow:
        case ErrorKind::NoConvergence: return kCheckFailed;
        default: return kDegenerate;
    }
}

ojson error_json(const Error& e) {
    ojson j;
    j["schema"] = "error/1";
    j["error"] = std::string(to_string(e.kind()));
    j["message"] = e.what();
    return j;
}

void write_text(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path->string());
    f << text;
    if (!f) throw std::runtime_error("cannot write " + path->string());
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

struct Loaded {
    SystemSpec spec;
    std::optional<InelasticPair> pair;
};

// Loads the spec and builds the pair; on failure prints the reason and sets code.
std::optional<Loaded> load(const Options& opt, std::ostream& err, int& code) {
    Loaded l;
    try {
        l.spec = load_spec(opt.spec);
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        code = kUsage;
        return std::nullopt;
    }
    try {
        l.pair.emplace(build_pair(l.spec));
    } catch (const PatternError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& m : e.mismatches())
            err << fmt::format("  b{}{}: expected {} got {}\n", m.row, m.col, num(m.expected), num(m.actual));
        code = kCheckFailed;
        return std::nullopt;
    }
    return l;
}

int report_error(const Error& e, const Options& opt, std::ostream& out, std::ostream& err) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    try {
        if (opt.out && !std::filesystem::is_directory(*opt.out)) write_text(opt.out, dump(error_json(e)), out);
    } catch (const std::exception& w) {
        err << "error: " << w.what() << "\n";
    }
    return exit_code_for(e.kind());
}

Vec3 sphere_grid_point(std::size_t i, std::size_t j, std::size_t rows, std::size_t cols) {
    const double theta = kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(rows);
    const double phi = 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(cols);
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 torus_grid_point(std::size_t i, std::size_t j, std::size_t rows, std::size_t cols) {
    const double u = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(rows);
    const double v = 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(cols);
    const double r = kTorusMajorRadius + kTorusMinorRadius * std::cos(u);
    return {r * std::cos(v), r * std::sin(v), kTorusMinorRadius * std::sin(u)};
}

Vec3 grid_point(ManifoldKind kind, std::size_t i, std::size_t j, std::size_t rows, std::size_t cols) {
    return kind == ManifoldKind::Sphere ? sphere_grid_point(i, j, rows, cols)
                                        : torus_grid_point(i, j, rows, cols);
}

ojson region_labels(const InelasticPair& pair, const TorusTangencySet* torus) {
    ojson counts = ojson::object();
    for (auto k : {RegionKind::Sliding, RegionKind::Escape, RegionKind::Tangency, RegionKind::Sewing})
        counts[std::string(to_string(k))] = 0;
    ojson labels = ojson::array();
    std::optional<std::string> uniform;
    bool mixed = false;
    for (std::size_t i = 0; i < kLabelGridRows; ++i) {
        for (std::size_t j = 0; j < kLabelGridCols; ++j) {
            const Vec3 x = grid_point(pair.kind(), i, j, kLabelGridRows, kLabelGridCols);
            const RegionLabel label = classify_point(pair, x);
            const std::string kind(to_string(label.kind));
            counts[kind] = counts[kind].get<int>() + 1;
            if (!uniform) uniform = kind;
            else if (*uniform != kind) mixed = true;
            ojson e;
            e["x"] = vec_json(x);
            e["label"] = to_string(label);
            if (torus) {
                const int r = torus->region_of(x, 1e-12);
                e["region"] = r == 0 ? std::string("tangency") : fmt::format("R{}", r);
            }
            labels.push_back(std::move(e));
        }
    }
    ojson j;
    j["grid"] = ojson::array({kLabelGridRows, kLabelGridCols});
    j["counts"] = counts;
    j["uniform_label"] = mixed ? ojson(nullptr) : ojson(*uniform);
    j["samples"] = std::move(labels);
    return j;
}

ojson classification_curves(const TangencyClassification& c) {
    ojson curves = ojson::array();
    for (const auto& circle : c.circles) curves.push_back(circle_json(circle));
    return curves;
}

ojson classification_loops(const TangencyClassification& c) {
    ojson loops = ojson::array();
    for (const auto& loop : c.loops) {
        ojson pts = ojson::array();
        for (const Vec3& p : loop.points) pts.push_back(vec_json(p));
        ojson l;
        l["label"] = loop.label;
        l["points"] = std::move(pts);
        loops.push_back(std::move(l));
    }
    return loops;
}

ojson points_json(const std::vector<Vec3>& points) {
    ojson pts = ojson::array();
    for (const Vec3& p : points) pts.push_back(vec_json(p));
    return pts;
}

ojson inertia_json(const Inertia& in) {
    ojson j;
    j["plus"] = in.n_plus;
    j["minus"] = in.n_minus;
    j["zero"] = in.n_zero;
    return j;
}

std::vector<const CircleCurve*> torus_circles(const TorusTangencySet& set) {
    const auto arr = set.circles();
    return {arr.begin(), arr.end()};
}

std::string surface_csv(ManifoldKind kind, const std::string& digest) {
    std::string s = fmt::format("# surface-csv/1 manifold={} spec={} rows={} cols={} columns=i,j,x1,x2,x3\n",
                                to_string(kind), digest, kSurfaceRows, kSurfaceCols);
    for (std::size_t i = 0; i < kSurfaceRows; ++i)
        for (std::size_t j = 0; j < kSurfaceCols; ++j) {
            const Vec3 x = grid_point(kind, i, j, kSurfaceRows, kSurfaceCols);
            s += fmt::format("{},{},{},{},{}\n", i, j, num(x[0]), num(x[1]), num(x[2]));
        }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reports

ojson classify_report(const SystemSpec& spec, const InelasticPair& pair) {
    ojson j;
    j["schema"] = "classify/1";
    j["spec_digest"] = spec_digest(spec);
    j["manifold"] = std::string(to_string(pair.kind()));
    if (pair.kind() == ManifoldKind::Sphere) {
        const SymForm3 q = quadratic_form_Q(pair.a());
        const TangencyClassification c = classify_sphere_tangency(q);
        j["Q"] = mat_json(q.matrix());
        j["eigenvalues"] = ojson::array({q.eigenvalues()[0], q.eigenvalues()[1], q.eigenvalues()[2]});
        j["inertia"] = inertia_json(c.inertia);
        j["configuration"] = std::string(to_string(c.configuration));
        j["curve_count"] = c.curve_count();
        j["curves"] = classification_curves(c);
        j["loops"] = classification_loops(c);
        j["points"] = points_json(c.points);
        j["regions"] = region_labels(pair, nullptr);
        return j;
    }
    const TorusTangencySet set = torus_tangency_set(pair.a());
    const TorusDecomposition d = torus_q2_q4(pair.a());
    ojson q2 = ojson::object();
    for (std::size_t k = 0; k < d.q2.size(); ++k) q2[monomial_name(kQ2Monomials[k])] = d.q2[k];
    j["q2"] = std::move(q2);
    j["configuration"] = "FourCircles";
    j["curve_count"] = 4;
    ojson curves = ojson::array();
    for (const CircleCurve* c : torus_circles(set)) curves.push_back(circle_json(*c));
    j["curves"] = std::move(curves);
    j["singular_curves"] = ojson::array({set.c1.label, set.c2.label});
    j["plane_normal"] = vec_json(set.plane_normal);
    j["crossings"] = points_json({set.crossings.begin(), set.crossings.end()});
    j["regions"] = region_labels(pair, &set);
    return j;
}

ojson curves_document(const SystemSpec& spec, const InelasticPair& pair, int figure) {
    ojson j;
    j["schema"] = "curves/1";
    j["figure"] = figure;
    j["manifold"] = std::string(to_string(pair.kind()));
    j["spec_digest"] = spec_digest(spec);
    if (pair.kind() == ManifoldKind::Sphere) {
        const TangencyClassification c = classify_sphere_tangency(quadratic_form_Q(pair.a()));
        j["configuration"] = std::string(to_string(c.configuration));
        j["inertia"] = inertia_json(c.inertia);
        j["curve_count"] = c.curve_count();
        j["curves"] = classification_curves(c);
        j["loops"] = classification_loops(c);
        j["points"] = points_json(c.points);
        return j;
    }
    const TorusTangencySet set = torus_tangency_set(pair.a());
    j["configuration"] = "FourCircles";
    j["curve_count"] = 4;
    ojson curves = ojson::array();
    for (const CircleCurve* c : torus_circles(set)) curves.push_back(circle_json(*c));
    j["curves"] = std::move(curves);
    j["loops"] = ojson::array();
    j["points"] = points_json({set.crossings.begin(), set.crossings.end()});
    return j;
}

namespace {

ojson failures_json(const std::vector<TrialFailure>& failures) {
    ojson arr = ojson::array();
    for (const auto& f : failures) {
        ojson e;
        e["trial"] = f.trial;
        e["start"] = vec_json(f.start);
        e["reason"] = f.reason;
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace

ojson theorem_a_json(const TheoremAReport& rep) {
    ojson j;
    j["schema"] = "verify/1";
    j["theorem"] = "A";
    j["trivial"] = rep.trivial;
    if (rep.trivial) {
        j["passed"] = false;
        return j;
    }
    j["passed"] = rep.ok();
    j["rate"] = rep.rate;
    j["period"] = rep.period;
    j["normal"] = vec_json(rep.normal);
    j["p_plus"] = vec_json(rep.p_plus);
    j["p_minus"] = vec_json(rep.p_minus);
    j["skew_residual"] = rep.skew_residual;
    j["equilibrium_norm_error"] = rep.equilibrium_norm_error;
    j["equilibrium_residual"] = rep.equilibrium_residual;
    j["axis_alignment"] = rep.axis_alignment;
    j["zero_form"] = rep.zero_form;
    j["trials"] = rep.trials;
    j["trials_passed"] = rep.passed;
    j["worst_return_distance"] = rep.worst_return_distance;
    j["worst_plane_deviation"] = rep.worst_plane_deviation;
    j["failures"] = failures_json(rep.failures);
    return j;
}

ojson theorem_b_json(const TheoremBReport& rep) {
    ojson j;
    j["schema"] = "verify/1";
    j["theorem"] = "B";
    j["trivial"] = rep.trivial;
    if (rep.tangency) {
        ojson curves = ojson::array();
        for (const CircleCurve* c : torus_circles(*rep.tangency)) curves.push_back(circle_json(*c));
        j["tangency_curves"] = std::move(curves);
    }
    j["worst_circle_sigma"] = rep.worst_circle_sigma;
    j["worst_circle_lie_derivative"] = rep.worst_circle_lie;
    if (rep.trivial) {
        j["passed"] = false;
        return j;
    }
    j["passed"] = rep.ok();
    j["rate"] = rep.rate;
    j["period"] = rep.period;
    j["expected_period"] = rep.expected_period;
    j["trials"] = rep.trials;
    j["trials_passed"] = rep.passed;
    j["worst_return_distance"] = rep.worst_return_distance;
    j["worst_x3_drift"] = rep.worst_x3_drift;
    j["worst_r2_drift"] = rep.worst_r2_drift;
    j["worst_plane_deviation"] = rep.worst_plane_deviation;
    j["min_transversal_speed"] = rep.min_transversal_speed;
    j["singular_starts"] = rep.singular_starts;
    j["singular_stops"] = rep.singular_stops;
    j["failures"] = failures_json(rep.failures);
    return j;
}

void write_trajectory_csv(std::ostream& os, const std::vector<const PiecewiseTrajectory*>& trajs,
                          const CsvHeader& header) {
    fmt::print(os, "# {} spec={} seed={} columns=t,x1,x2,x3,kind,segment\n", header.schema, header.digest,
               header.seed);
    std::size_t index = 0;
    for (const PiecewiseTrajectory* traj : trajs) {
        for (const TrajectorySegment& seg : traj->segments) {
            for (const TrajectorySample& s : seg.samples)
                fmt::print(os, "{},{},{},{},{},{}\n", num(s.t), num(s.x[0]), num(s.x[1]), num(s.x[2]),
                           to_string(seg.kind), index);
            ++index;
        }
    }
}

std::vector<PiecewiseTrajectory> figure_trajectories(const InelasticPair& pair) {
    std::vector<PiecewiseTrajectory> out;
    const SlidingRotation rot = sliding_data(pair);
    if (rot.trivial) return out;
    std::vector<Vec3> starts;
    SimulationOptions opts;
    opts.samples_per_segment = 128;
    if (pair.kind() == ManifoldKind::Sphere) {
        opts.policy = TangencyPolicy::ExtendedField;
        const Vec3 e1 = orthonormal_complement(rot.normal).first;
        for (double h : {-0.8, -0.4, 0.0, 0.4, 0.8}) starts.push_back(h * rot.normal + std::sqrt(1.0 - h * h) * e1);
    } else {
        for (double u : {kPi / 6, 5 * kPi / 6, 7 * kPi / 6, 11 * kPi / 6})
            starts.push_back({kTorusMajorRadius + kTorusMinorRadius * std::cos(u), 0.0,
                              kTorusMinorRadius * std::sin(u)});
    }
    for (const Vec3& x0 : starts) out.push_back(simulate(pair, x0, rot.period(), opts));
    return out;
}

// ---------------------------------------------------------------------------
// Verbs

int cmd_build(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kOk;
    auto loaded = load(opt, err, code);
    if (!loaded) return code;
    const InelasticPair& pair = *loaded->pair;
    const double residual = verify_inelastic(pair.a(), pair.b(), pair.kind(), kBuildSamples, kBuildSeed);
    const double bound = 1e-9 * pair.scale();
    const bool ok = residual <= bound;

    fmt::print(out, "manifold: {}\n", to_string(pair.kind()));
    fmt::print(out, "B =\n");
    for (std::size_t i = 0; i < 3; ++i)
        fmt::print(out, "  [{}, {}, {}]\n", num(pair.b()(i, 0)), num(pair.b()(i, 1)), num(pair.b()(i, 2)));
    fmt::print(out, "inelastic residual: {} ({} samples, bound {})\n", num(residual), kBuildSamples, num(bound));
    fmt::print(out, "status: {}\n", ok ? "ok" : "FAIL");

    if (opt.out) {
        ojson j;
        j["schema"] = "build/1";
        j["spec_digest"] = spec_digest(loaded->spec);
        j["manifold"] = std::string(to_string(pair.kind()));
        j["B"] = mat_json(pair.b());
        j["residual"] = residual;
        j["samples"] = kBuildSamples;
        j["passed"] = ok;
        try {
            write_text(opt.out, dump(j), out);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kUsage;
        }
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_classify(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kOk;
    auto loaded = load(opt, err, code);
    if (!loaded) return code;
    try {
        write_text(opt.out, dump(classify_report(loaded->spec, *loaded->pair)), out);
    } catch (const Error& e) {
        return report_error(e, opt, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
    if (!opt.x0) {
        err << "error: simulate needs --x0\n";
        return kUsage;
    }
    if (!(opt.tmax > 0.0) || !std::isfinite(opt.tmax)) {
        err << "error: --tmax must be positive\n";
        return kUsage;
    }
    int code = kOk;
    auto loaded = load(opt, err, code);
    if (!loaded) return code;
    const InelasticPair& pair = *loaded->pair;

    PiecewiseTrajectory traj;
    try {
        traj = simulate(pair, *opt.x0, opt.tmax);
    } catch (const Error& e) {
        return report_error(e, opt, out, err);
    }

    std::ostringstream csv;
    write_trajectory_csv(csv, {&traj}, {"trajectory-csv/1", spec_digest(loaded->spec), opt.seed});
    std::ostream& summary = opt.out ? out : err;
    try {
        write_text(opt.out, csv.str(), out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    fmt::print(summary, "termination: {}\n", to_string(traj.termination));
    fmt::print(summary, "segments: {}\n", traj.segments.size());
    for (const auto& seg : traj.segments)
        fmt::print(summary, "segment: {} field={} t=[{}, {}] samples={}\n", to_string(seg.kind), seg.field,
                   num(seg.t_start), num(seg.t_end), seg.samples.size());
    for (const auto& ev : traj.events)
        fmt::print(summary, "event: {} t={} x={} label={} angle={}\n", to_string(ev.kind), num(ev.t),
                   vec_text(ev.x), to_string(ev.label), num(ev.transversality));
    for (const auto& a : traj.advisories) fmt::print(summary, "advisory: {}\n", a);

    const TrajectorySegment& last = traj.segments.back();
    if (traj.termination == Termination::Equilibrium) {
        fmt::print(summary, "closure: degenerate (equilibrium) at {}\n", vec_text(last.samples.front().x));
    } else if (last.kind == SegmentKind::Sliding) {
        const SlidingRotation rot = sliding_data(pair);
        const ClosureReport cr = closure_report(last, rot, opt.tol);
        const bool full_turn = last.t_end - last.t_start >= cr.period * (1.0 - 1e-9);
        fmt::print(summary, "closure: {} period={} return_distance={} normal={} max_plane_deviation={}\n",
                   !full_turn ? "incomplete" : (cr.closed ? "closed" : "open"), num(cr.period),
                   num(cr.return_distance), vec_text(cr.normal), num(cr.max_plane_deviation));
    }

    if (opt.strict && !traj.advisories.empty()) return kAdvisory;
    return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kOk;
    auto loaded = load(opt, err, code);
    if (!loaded) return code;
    const InelasticPair& pair = *loaded->pair;
    if (opt.trials == 0) {
        err << "error: --trials must be at least 1\n";
        return kUsage;
    }
    const ManifoldKind needed = opt.theorem == 'A' ? ManifoldKind::Sphere : ManifoldKind::Torus;
    if (pair.kind() != needed) {
        err << fmt::format("error: theorem {} needs a {} spec\n", opt.theorem, to_string(needed));
        return kUsage;
    }

    ojson report;
    bool passed = false;
    bool trivial = false;
    try {
        if (opt.theorem == 'A') {
            const TheoremAReport rep = verify_theorem_a(pair.a(), pair.free_parameters(), opt.trials, opt.seed, opt.tol);
            report = theorem_a_json(rep);
            passed = rep.ok();
            trivial = rep.trivial;
            if (!trivial)
                fmt::print(out,
                           "theorem A: {}/{} trials closed; worst return distance {}; worst plane deviation {}; "
                           "max |S p| {}; period {}\n",
                           rep.passed, rep.trials, num(rep.worst_return_distance), num(rep.worst_plane_deviation),
                           num(rep.equilibrium_residual), num(rep.period));
        } else {
            const TheoremBReport rep = verify_theorem_b(pair.a(), pair.free_parameters().b21, opt.trials, opt.seed, opt.tol);
            report = theorem_b_json(rep);
            passed = rep.ok();
            trivial = rep.trivial;
            if (!trivial)
                fmt::print(out,
                           "theorem B: {}/{} trials closed; worst return distance {}; worst x3 drift {}; "
                           "worst r^2 drift {}; min transversal speed {}; singular stops {}/{}; period {}\n",
                           rep.passed, rep.trials, num(rep.worst_return_distance), num(rep.worst_x3_drift),
                           num(rep.worst_r2_drift), num(rep.min_transversal_speed), rep.singular_stops,
                           rep.singular_starts, num(rep.period));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::HypothesisViolation) {
            for (const auto& v : q4_violations(pair.a()))
                err << fmt::format("  q4 coefficient of {}: {}\n", v.monomial, num(v.value));
        }
        return report_error(e, opt, out, err);
    }

    report["seed"] = opt.seed;
    report["tol"] = opt.tol;
    report["spec_digest"] = spec_digest(loaded->spec);
    if (trivial) {
        fmt::print(out, "theorem {}: trivial sliding field, nothing to verify\n", opt.theorem);
        err << "error: trivial_sliding_field: the sliding field vanishes identically\n";
    } else {
        fmt::print(out, "status: {}\n", passed ? "PASS" : "FAIL");
    }
    if (opt.out) {
        try {
            write_text(opt.out, dump(report), out);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kUsage;
        }
    }
    if (trivial) return kDegenerate;
    return passed ? kOk : kCheckFailed;
}

int cmd_emit_figure(const Options& opt, std::ostream& out, std::ostream& err) {
    if (!opt.out) {
        err << "error: emit-figure needs --out DIR\n";
        return kUsage;
    }
    if (opt.figure != 1 && opt.figure != 2) {
        err << "error: --figure must be 1 or 2\n";
        return kUsage;
    }
    int code = kOk;
    auto loaded = load(opt, err, code);
    if (!loaded) return code;
    const InelasticPair& pair = *loaded->pair;
    const ManifoldKind needed = opt.figure == 1 ? ManifoldKind::Sphere : ManifoldKind::Torus;
    if (pair.kind() != needed) {
        err << fmt::format("error: figure {} needs a {} spec\n", opt.figure, to_string(needed));
        return kUsage;
    }

    const std::string digest = spec_digest(loaded->spec);
    const std::filesystem::path dir = *opt.out;
    try {
        const ojson curves = curves_document(loaded->spec, pair, opt.figure);
        const std::vector<PiecewiseTrajectory> trajs = figure_trajectories(pair);
        std::vector<const PiecewiseTrajectory*> ptrs;
        for (const auto& t : trajs) ptrs.push_back(&t);
        std::ostringstream csv;
        write_trajectory_csv(csv, ptrs, {"trajectory-csv/1", digest, opt.seed});

        std::filesystem::create_directories(dir);
        write_text(dir / "curves.json", dump(curves), out);
        write_text(dir / "surface.csv", surface_csv(pair.kind(), digest), out);
        write_text(dir / "trajectories.csv", csv.str(), out);
        fmt::print(out, "configuration: {}\n", curves["configuration"].get<std::string>());
        fmt::print(out, "curves: {}\n", curves["curve_count"].get<std::size_t>());
        fmt::print(out, "trajectories: {}\n", trajs.size());
        for (const char* name : {"curves.json", "surface.csv", "trajectories.csv"})
            fmt::print(out, "wrote {}\n", (dir / name).string());
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

}  // namespace filippov::cli
