#include "errors.hpp"

namespace ccnorm {

std::string_view error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::domain: return "DomainError";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::degenerate_parameters: return "DegenerateParameters";
    case ErrorCode::overflow_in_summand: return "OverflowInSummand";
    case ErrorCode::precision_exhausted: return "PrecisionExhausted";
    case ErrorCode::unsupported_dimension: return "UnsupportedDimension";
    case ErrorCode::pole_hit: return "PoleHit";
    case ErrorCode::inversion_diverged: return "InversionDiverged";
    case ErrorCode::ambiguous_ties: return "AmbiguousTies";
    case ErrorCode::moment_inconsistent: return "MomentInconsistent";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace ccnorm
