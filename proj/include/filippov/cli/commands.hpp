#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "filippov/cli/spec_io.hpp"
#include "filippov/flow.hpp"
#include "filippov/theorems.hpp"

namespace filippov::cli {

/// Exit codes of every verb.
///   0  success
///   1  check failed: inelastic residual, companion pattern, or a verification trial
///   2  usage, spec parse or file error
///   3  degenerate input: zero tangency form, trivial sliding field, hypothesis violation
///   4  advisory raised during integration and escalated by --strict
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kDegenerate = 3, kAdvisory = 4 };

struct Options {
    std::filesystem::path spec;
    std::optional<Vec3> x0;
    double tmax = 10.0;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::optional<std::filesystem::path> out;
    bool strict = false;
    char theorem = 'A';
    int figure = 1;
};

int cmd_build(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_classify(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_emit_figure(const Options& opt, std::ostream& out, std::ostream& err);

// Report builders, shared with the tests.

inline constexpr std::size_t kLabelGridRows = 18;
inline constexpr std::size_t kLabelGridCols = 36;

/// Tangency structure and region labels. Throws Error(ZeroForm),
/// Error(HypothesisViolation) or Error(DegenerateTangency).
nlohmann::ordered_json classify_report(const SystemSpec& spec, const InelasticPair& pair);

/// Curve document ("curves/1"): circles, sampled loops and isolated points.
nlohmann::ordered_json curves_document(const SystemSpec& spec, const InelasticPair& pair, int figure);

nlohmann::ordered_json theorem_a_json(const TheoremAReport& rep);
nlohmann::ordered_json theorem_b_json(const TheoremBReport& rep);

struct CsvHeader {
    std::string schema;  // e.g. "trajectory-csv/1"
    std::string digest;
    std::uint64_t seed = 0;
};

/// Six columns t,x1,x2,x3,kind,segment after a one-line header. Segment
/// indices run on across the trajectories.
void write_trajectory_csv(std::ostream& os, const std::vector<const PiecewiseTrajectory*>& trajs,
                          const CsvHeader& header);

/// Representative sliding trajectories for a figure (empty for a trivial field).
std::vector<PiecewiseTrajectory> figure_trajectories(const InelasticPair& pair);

}  // namespace filippov::cli
