#include "oracle.hpp"

#include "closed_form.hpp"
#include "errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace ccnorm {

void OracleConfig::validate() const
{
    if (target_sig_figs < 1)
        fail(ErrorCode::invalid_argument, "oracle target_sig_figs must be >= 1");
    if (initial_bits < 53)
        fail(ErrorCode::invalid_argument, "oracle initial_bits must be >= 53");
    if (max_bits < initial_bits)
        fail(ErrorCode::invalid_argument, "oracle max_bits must be >= initial_bits");
    if (growth < 2)
        fail(ErrorCode::invalid_argument, "oracle growth must be >= 2");
}

BigFloat closed_form_big(std::span<const BigFloat> full)
{
    const std::size_t K = full.size();
    const long bits = full.empty() ? 64 : full.front().bits();
    BigFloat sum(bits);
    BigFloat denominator(bits);
    for (std::size_t k = 0; k < K; ++k) {
        denominator = BigFloat(1L, bits);
        for (std::size_t i = 0; i < K; ++i)
            if (i != k)
                denominator *= full[k] - full[i];
        sum += exp(full[k]) / denominator;
    }
    return sum;
}

BigFloat closed_form_big(std::span<const double> full, long bits)
{
    std::vector<BigFloat> x;
    x.reserve(full.size());
    for (double v : full)
        x.emplace_back(v, bits);
    return closed_form_big(x);
}

OracleValue oracle_big(std::span<const double> full, const OracleConfig& cfg)
{
    cfg.validate();
    require_distinct(full);

    long bits = cfg.initial_bits;
    BigFloat previous = closed_form_big(full, bits);
    double before_previous = std::nan("");
    while (bits < cfg.max_bits) {
        bits = std::min(bits * cfg.growth, cfg.max_bits);
        BigFloat current = closed_form_big(full, bits);
        // C(eta) is an integral of a positive function, so a non-positive
        // value is cancellation noise and never counts as converged.
        if (previous.sign() > 0 && current.sign() > 0 && agree_sig_figs(previous, current, cfg.target_sig_figs))
            return {std::move(current), bits};
        before_previous = previous.to_double();
        previous = std::move(current);
    }
    throw PrecisionExhaustedError("oracle did not converge to " + std::to_string(cfg.target_sig_figs) +
                                      " significant figures within " + std::to_string(cfg.max_bits) + " bits",
                                  before_previous, previous.to_double());
}

EvalResult norm_const_oracle(const NaturalParams& eta, const OracleConfig& cfg)
{
    const auto full = eta.full();
    const OracleValue v = oracle_big(full, cfg);
    const double log_abs = v.value.log10_abs() * std::numbers::ln10;
    EvalResult r = make_result(log_abs, v.value.sign(), Method::oracle, PrecisionTag::arbitrary(v.bits));
    // Prefer the directly rounded value; exp(log_abs) loses a few ulps.
    r.value = v.value.to_double();
    return r;
}

double oracle_log10_abs(const NaturalParams& eta)
{
    const auto full = eta.full();
    return oracle_big(full).value.log10_abs();
}

namespace {

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr unsigned max_depth = 12;
constexpr double tol_floor = 1e-14;

// Integral over {x_j + ... + x_{K-1} <= w} of exp(sum_i eta_i x_i), built as
// I_j(w) = int_0^w exp(eta_j x) I_{j+1}(w - x) dx. The last level is done
// exactly; inner levels get tighter tolerances so the outer integrand is
// smooth to well below the outer tolerance.
double iterated(std::span<const double> eta, std::size_t j, double w, double tol)
{
    const double rate = eta[j];
    if (j + 1 == eta.size())
        return rate == 0.0 ? w : std::expm1(rate * w) / rate;
    const double inner_tol = std::max(tol * 1e-1, tol_floor);
    auto integrand = [&](double x) { return std::exp(rate * x) * iterated(eta, j + 1, w - x, inner_tol); };
    return GaussKronrod::integrate(integrand, 0.0, w, max_depth, tol);
}

} // namespace

double norm_const_quadrature(const NaturalParams& eta, double rel_tol)
{
    if (eta.dim() > 5)
        fail(ErrorCode::unsupported_dimension,
             "nested quadrature supports K <= 5, got K=" + std::to_string(eta.dim()));
    if (!(rel_tol > 0.0))
        fail(ErrorCode::invalid_argument, "quadrature rel_tol must be positive");
    return iterated(eta.eta(), 0, 1.0, rel_tol);
}

} // namespace ccnorm
