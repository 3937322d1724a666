#include "equipart/errors.hpp"

namespace equipart {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid-dimension";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::DegenerateRoots: return "degenerate-roots";
        case ErrorKind::DegenerateTangency: return "degenerate-tangency";
        case ErrorKind::SizeMismatch: return "size-mismatch";
        case ErrorKind::InvalidLabel: return "invalid-label";
        case ErrorKind::TooManyBits: return "too-many-bits";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::TrivialMeasures: return "trivial-measures";
        case ErrorKind::Infeasible: return "infeasible-spec";
        case ErrorKind::OverlappingIntervals: return "overlapping-intervals";
        case ErrorKind::RealizationFailed: return "realization-failed";
        case ErrorKind::ChartBreakdown: return "chart-breakdown";
        case ErrorKind::InvalidMesh: return "invalid-mesh";
        case ErrorKind::GenericityViolation: return "genericity-violation";
        case ErrorKind::NonTransverseRay: return "non-transverse-ray";
        case ErrorKind::ShieldViolation: return "shield-violation";
        case ErrorKind::InvalidSymmetry: return "invalid-symmetry";
    }
    return "unknown";
}

bool is_refusal(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::RealizationFailed:
        case ErrorKind::ChartBreakdown:
            return false;
        default:
            return true;
    }
}

}  // namespace equipart
