#include "closed_form.hpp"

#include "errors.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

// The binary32 path relies on float arithmetic staying in binary32.
static_assert(FLT_EVAL_METHOD == 0, "intermediate float results must not be widened");

namespace ccnorm {

namespace {

template <typename T>
std::vector<T> summands_in(std::span<const double> full)
{
    const std::size_t K = full.size();
    std::vector<T> eta(K);
    for (std::size_t i = 0; i < K; ++i)
        eta[i] = static_cast<T>(full[i]);

    std::vector<T> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        T mantissa = T(1);
        int exponent = 0;
        for (std::size_t i = 0; i < K; ++i) {
            if (i == k)
                continue;
            const T diff = eta[k] - eta[i];
            if (diff == T(0))
                fail(ErrorCode::degenerate_parameters,
                     "eta_" + std::to_string(k + 1) + " and eta_" + std::to_string(i + 1) +
                         " coincide at the working precision; use the repeated-parameter method");
            int e = 0;
            mantissa = std::frexp(mantissa * diff, &e);
            exponent += e;
        }
        const T numerator = std::exp(eta[k]);
        if (std::isinf(numerator))
            fail(ErrorCode::overflow_in_summand,
                 "exp(eta_" + std::to_string(k + 1) + ") overflows; use log_norm_const_signed");
        const T term = std::ldexp(numerator / mantissa, -exponent);
        if (std::isinf(term))
            fail(ErrorCode::overflow_in_summand,
                 "summand " + std::to_string(k + 1) + " overflows; use log_norm_const_signed");
        out[k] = term;
    }
    return out;
}

template <typename T>
double sum_in(const std::vector<T>& terms)
{
    T acc = T(0);
    for (const T t : terms)
        acc += t;
    if (!std::isfinite(acc))
        fail(ErrorCode::overflow_in_summand, "sum of summands overflows; use log_norm_const_signed");
    return static_cast<double>(acc);
}

struct LogTerm {
    double log_abs;
    int sign;
};

std::vector<LogTerm> log_terms(std::span<const double> full)
{
    const std::size_t K = full.size();
    std::vector<LogTerm> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        double log_denominator = 0.0;
        int sign = 1;
        for (std::size_t i = 0; i < K; ++i) {
            if (i == k)
                continue;
            const double diff = full[k] - full[i];
            log_denominator += std::log(std::fabs(diff));
            if (diff < 0.0)
                sign = -sign;
        }
        out[k] = {full[k] - log_denominator, sign};
    }
    return out;
}

} // namespace

void require_distinct(std::span<const double> full)
{
    std::vector<std::pair<double, std::size_t>> sorted;
    sorted.reserve(full.size());
    for (std::size_t i = 0; i < full.size(); ++i)
        sorted.emplace_back(full[i], i);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].first == sorted[i - 1].first)
            fail(ErrorCode::degenerate_parameters,
                 "eta_" + std::to_string(sorted[i - 1].second + 1) + " == eta_" + std::to_string(sorted[i].second + 1) +
                     " (the implicit eta_K is 0); use the repeated-parameter method");
}

std::vector<double> closed_form_summands(const NaturalParams& eta, Precision precision)
{
    const auto full = eta.full();
    require_distinct(full);
    if (precision == Precision::binary32) {
        const auto terms = summands_in<float>(full);
        return {terms.begin(), terms.end()};
    }
    return summands_in<double>(full);
}

EvalResult norm_const_closed(const NaturalParams& eta, Precision precision)
{
    const auto full = eta.full();
    require_distinct(full);
    const double value = precision == Precision::binary32 ? sum_in(summands_in<float>(full))
                                                          : sum_in(summands_in<double>(full));
    EvalResult r = make_result(value, precision == Precision::binary32 ? Method::closed_binary32
                                                                       : Method::closed_binary64,
                               PrecisionTag::of(precision));
    r.diagnostics = cancellation_diagnostics(eta);
    return r;
}

SignedLog log_norm_const_signed(const NaturalParams& eta)
{
    const auto full = eta.full();
    require_distinct(full);
    const auto terms = log_terms(full);
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        shift = std::max(shift, t.log_abs);
    double acc = 0.0;
    for (const auto& t : terms)
        acc += t.sign * std::exp(t.log_abs - shift);
    if (acc == 0.0)
        return {-std::numeric_limits<double>::infinity(), 1};
    return {shift + std::log(std::fabs(acc)), acc < 0.0 ? -1 : 1};
}

double log10_max_summand(const NaturalParams& eta)
{
    const auto full = eta.full();
    require_distinct(full);
    double log_max = -std::numeric_limits<double>::infinity();
    for (const auto& t : log_terms(full))
        log_max = std::max(log_max, t.log_abs);
    return log_max / std::numbers::ln10;
}

CancellationReport cancellation_diagnostics(const NaturalParams& eta)
{
    constexpr double ln10 = std::numbers::ln10;
    CancellationReport report;
    report.log10_max_abs_summand = log10_max_summand(eta);
    report.log10_abs_result = log_norm_const_signed(eta).log_abs / ln10;
    report.digits_lost_estimate = report.log10_max_abs_summand - report.log10_abs_result;
    if (!(report.digits_lost_estimate <= oracle_handoff_digits)) {
        report.log10_abs_result = oracle_log10_abs(eta);
        report.digits_lost_estimate = report.log10_max_abs_summand - report.log10_abs_result;
    }
    report.region = classify_gap(report.digits_lost_estimate);
    return report;
}

} // namespace ccnorm
