#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace filippov {

enum class ErrorKind {
    Overflow,
    NoConvergence,
    ZeroForm,
    DegenerateTangency,
    HypothesisViolation,
    TangencyPoint,
    ParametrizationDegenerate,
    TrivialField,
    InvalidArgument,
};

/// Machine-readable identifier, stable across releases (used in CLI reports).
constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Overflow: return "overflow";
        case ErrorKind::NoConvergence: return "no_convergence";
        case ErrorKind::ZeroForm: return "zero_form";
        case ErrorKind::DegenerateTangency: return "degenerate_tangency";
        case ErrorKind::HypothesisViolation: return "hypothesis_violation";
        case ErrorKind::TangencyPoint: return "tangency_point";
        case ErrorKind::ParametrizationDegenerate: return "parametrization_degenerate";
        case ErrorKind::TrivialField: return "trivial_sliding_field";
        case ErrorKind::InvalidArgument: return "invalid_argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace filippov
