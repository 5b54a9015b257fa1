#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccnorm {

enum class ErrorCode {
    domain,
    dimension_mismatch,
    degenerate_parameters,
    overflow_in_summand,
    precision_exhausted,
    unsupported_dimension,
    pole_hit,
    inversion_diverged,
    ambiguous_ties,
    moment_inconsistent,
    invalid_argument,
};

/// Stable identifier used on the CLI's stderr and by the C API.
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Thrown when the adaptive oracle hits its precision ceiling. Keeps the last
/// two (disagreeing) evaluations so callers can report them.
class PrecisionExhaustedError : public Error {
public:
    PrecisionExhaustedError(const std::string& what, double previous, double last)
        : Error(ErrorCode::precision_exhausted, what), previous_(previous), last_(last) {}

    double previous() const noexcept { return previous_; }
    double last() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace ccnorm
