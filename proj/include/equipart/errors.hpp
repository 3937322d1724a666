#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equipart {

enum class ErrorKind {
    InvalidDimension,
    DimensionMismatch,
    DegenerateRoots,
    DegenerateTangency,
    SizeMismatch,
    InvalidLabel,
    TooManyBits,
    InvalidArgument,
    TrivialMeasures,
    Infeasible,
    OverlappingIntervals,
    RealizationFailed,
    ChartBreakdown,
    InvalidMesh,
    GenericityViolation,
    NonTransverseRay,
    ShieldViolation,
    InvalidSymmetry,
};

std::string_view to_string(ErrorKind kind);

// Refusals are caller-input problems (infeasible specs, shield violations, ...);
// everything else signals a bug or an unexpected numerical failure.
bool is_refusal(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace equipart
