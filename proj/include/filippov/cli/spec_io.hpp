#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "filippov/algebra.hpp"
#include "filippov/inelastic.hpp"
#include "filippov/manifolds.hpp"

namespace filippov::cli {

/// System description read from a spec document:
///   {"manifold": "sphere" | "torus",
///    "A": [[a11, a12, a13], [a21, a22, a23], [a31, a32, a33]],
///    "b21": .., "b31": .., "b32": ..,     (free parameters, default 0)
///    "B": [[..], [..], [..]]}             (optional, checked against the companion)
/// When B is given without explicit free parameters they are read off B.
struct SystemSpec {
    ManifoldKind kind = ManifoldKind::Sphere;
    Mat3 a;
    FreeParameters free;
    std::optional<Mat3> b;
};

/// Malformed document or invalid values.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An explicit B that does not follow the companion pattern.
class PatternError : public std::runtime_error {
public:
    PatternError(const std::string& what, std::vector<PatternMismatch> mismatches)
        : std::runtime_error(what), mismatches_(std::move(mismatches)) {}
    const std::vector<PatternMismatch>& mismatches() const { return mismatches_; }

private:
    std::vector<PatternMismatch> mismatches_;
};

inline constexpr double kPatternTolerance = 1e-12;

SystemSpec parse_spec(const nlohmann::json& doc);
SystemSpec parse_spec_text(const std::string& text);
SystemSpec load_spec(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const SystemSpec& spec);

/// Builds the inelastic pair; throws PatternError for an explicit B off the pattern.
InelasticPair build_pair(const SystemSpec& spec);

/// FNV-1a 64-bit digest of the canonical (17 significant digit) spec text, as 16 hex digits.
std::string spec_digest(const SystemSpec& spec);

std::uint64_t fnv1a64(std::string_view bytes);

/// Parses "a,b,c" into a point; throws SpecError.
Vec3 parse_point(const std::string& text);

}  // namespace filippov::cli
