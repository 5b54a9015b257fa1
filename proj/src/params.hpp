#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace ccnorm {

/// Absolute slack allowed when checking simplex membership of computed inputs.
inline constexpr double simplex_tolerance = 1e-12;

/// A point of the simplex stored by its first K-1 coordinates; the K-th
/// coordinate is implicitly 1 - sum.
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords);

    std::size_t dim() const noexcept { return coords_.size() + 1; }
    std::span<const double> coords() const noexcept { return coords_; }
    double last() const noexcept;

private:
    std::vector<double> coords_;
};

/// Natural parameters (eta_1, ..., eta_{K-1}); eta_K is fixed at zero.
class NaturalParams {
public:
    explicit NaturalParams(std::vector<double> eta);

    /// Normalizes an overparameterized K-vector by subtracting its last entry.
    /// C(full) = exp(shift) * C(result); the shift is returned alongside.
    struct Normalized;
    static Normalized from_full(std::span<const double> full);

    std::size_t dim() const noexcept { return eta_.size() + 1; }
    std::span<const double> eta() const noexcept { return eta_; }

    /// (eta_1, ..., eta_{K-1}, 0).
    std::vector<double> full() const;

private:
    std::vector<double> eta_;
};

struct NaturalParams::Normalized {
    NaturalParams params;
    double shift;
};

/// Mean-like parameters: lambda with all K coordinates strictly positive.
class MeanParams {
public:
    explicit MeanParams(SimplexPoint lambda);

    std::size_t dim() const noexcept { return lambda_.dim(); }
    const SimplexPoint& lambda() const noexcept { return lambda_; }

    /// All K coordinates, including the implicit last one.
    std::vector<double> full() const;

private:
    struct unchecked_tag {};
    MeanParams(SimplexPoint lambda, unchecked_tag) : lambda_(std::move(lambda)) {}
    friend MeanParams eta_to_lambda(const NaturalParams& eta);

    SimplexPoint lambda_;
};

enum class Method {
    closed_binary32,
    closed_binary64,
    logsumexp,
    inductive,
    dehoog,
    stehfest,
    talbot,
    oracle,
    repeated,
    quadrature,
};

std::string_view method_name(Method m) noexcept;

enum class Precision { binary32, binary64 };

struct PrecisionTag {
    enum class Kind { binary32, binary64, arbitrary } kind = Kind::binary64;
    long bits = 53;

    static PrecisionTag of(Precision p)
    {
        return p == Precision::binary32 ? PrecisionTag{Kind::binary32, 24} : PrecisionTag{Kind::binary64, 53};
    }
    static PrecisionTag arbitrary(long bits) { return {Kind::arbitrary, bits}; }
};

enum class Region { green, yellow, red };

std::string_view region_name(Region r) noexcept;

struct CancellationReport {
    double log10_max_abs_summand = 0.0;
    double log10_abs_result = 0.0;
    double digits_lost_estimate = 0.0;
    Region region = Region::green;
};

/// Order-of-magnitude gap thresholds: <= 8 green, (8, 16] yellow, > 16 red.
Region classify_gap(double orders) noexcept;

struct EvalResult {
    double value = 0.0;
    double log_abs = 0.0;
    int sign = 1;
    Method method = Method::closed_binary64;
    PrecisionTag precision;
    std::optional<CancellationReport> diagnostics;

    /// Rescales by exp(shift), as needed after NaturalParams::from_full.
    EvalResult scaled_by_exp(double shift) const;
};

/// Builds an EvalResult from (log|C|, sign), filling value = sign*exp(log_abs).
EvalResult make_result(double log_abs, int sign, Method method, PrecisionTag precision);

/// Builds an EvalResult from a directly computed value.
EvalResult make_result(double value, Method method, PrecisionTag precision);

NaturalParams lambda_to_eta(const MeanParams& lambda);
MeanParams eta_to_lambda(const NaturalParams& eta);

/// eta^T x - log_C, the log density of the CC at x.
double log_density(const SimplexPoint& x, const NaturalParams& eta, double log_C);

} // namespace ccnorm
