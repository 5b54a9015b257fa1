#include "params.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ccnorm {

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords))
{
    if (coords_.empty())
        fail(ErrorCode::domain, "simplex point needs K >= 2 (at least one stored coordinate)");
    double sum = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i]) || coords_[i] < 0.0)
            fail(ErrorCode::domain, "simplex coordinate " + std::to_string(i + 1) + " is negative or not finite");
        sum += coords_[i];
    }
    if (sum > 1.0 + simplex_tolerance)
        fail(ErrorCode::domain, "simplex coordinates sum to " + std::to_string(sum) + " > 1");
}

double SimplexPoint::last() const noexcept
{
    const double sum = std::accumulate(coords_.begin(), coords_.end(), 0.0);
    return std::max(0.0, 1.0 - sum);
}

NaturalParams::NaturalParams(std::vector<double> eta) : eta_(std::move(eta))
{
    if (eta_.empty())
        fail(ErrorCode::domain, "natural parameters need K >= 2 (at least one entry)");
    for (std::size_t i = 0; i < eta_.size(); ++i)
        if (!std::isfinite(eta_[i]))
            fail(ErrorCode::domain, "eta_" + std::to_string(i + 1) + " is not finite");
}

NaturalParams::Normalized NaturalParams::from_full(std::span<const double> full)
{
    if (full.size() < 2)
        fail(ErrorCode::domain, "full parameter vector needs K >= 2 entries");
    const double shift = full.back();
    if (!std::isfinite(shift))
        fail(ErrorCode::domain, "eta_K is not finite");
    std::vector<double> eta(full.begin(), full.end() - 1);
    for (double& v : eta)
        v -= shift;
    return {NaturalParams(std::move(eta)), shift};
}

std::vector<double> NaturalParams::full() const
{
    std::vector<double> out(eta_);
    out.push_back(0.0);
    return out;
}

MeanParams::MeanParams(SimplexPoint lambda) : lambda_(std::move(lambda))
{
    const auto c = lambda_.coords();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!(c[i] > 0.0))
            fail(ErrorCode::domain, "lambda_" + std::to_string(i + 1) + " must be strictly positive");
    const double sum = std::accumulate(c.begin(), c.end(), 0.0);
    if (!(1.0 - sum > 0.0))
        fail(ErrorCode::domain, "lambda_" + std::to_string(c.size() + 1) + " = 1 - sum must be strictly positive");
}

std::vector<double> MeanParams::full() const
{
    std::vector<double> out(lambda_.coords().begin(), lambda_.coords().end());
    out.push_back(lambda_.last());
    return out;
}

std::string_view method_name(Method m) noexcept
{
    switch (m) {
    case Method::closed_binary32: return "closed32";
    case Method::closed_binary64: return "closed64";
    case Method::logsumexp: return "logsumexp";
    case Method::inductive: return "inductive";
    case Method::dehoog: return "dehoog";
    case Method::stehfest: return "stehfest";
    case Method::talbot: return "talbot";
    case Method::oracle: return "oracle";
    case Method::repeated: return "repeated";
    case Method::quadrature: return "quadrature";
    }
    return "unknown";
}

std::string_view region_name(Region r) noexcept
{
    switch (r) {
    case Region::green: return "green";
    case Region::yellow: return "yellow";
    case Region::red: return "red";
    }
    return "unknown";
}

Region classify_gap(double orders) noexcept
{
    if (orders <= 8.0)
        return Region::green;
    if (orders <= 16.0)
        return Region::yellow;
    return Region::red;
}

EvalResult EvalResult::scaled_by_exp(double shift) const
{
    if (shift == 0.0)
        return *this;
    EvalResult out = *this;
    out.log_abs = log_abs + shift;
    out.value = static_cast<double>(sign) * std::exp(out.log_abs);
    return out;
}

EvalResult make_result(double log_abs, int sign, Method method, PrecisionTag precision)
{
    EvalResult r;
    r.log_abs = log_abs;
    r.sign = sign < 0 ? -1 : 1;
    r.value = static_cast<double>(r.sign) * std::exp(log_abs);
    r.method = method;
    r.precision = precision;
    return r;
}

EvalResult make_result(double value, Method method, PrecisionTag precision)
{
    EvalResult r;
    r.value = value;
    r.sign = std::signbit(value) ? -1 : 1;
    r.log_abs = std::log(std::fabs(value));
    r.method = method;
    r.precision = precision;
    return r;
}

NaturalParams lambda_to_eta(const MeanParams& lambda)
{
    const auto full = lambda.full();
    const double log_last = std::log(full.back());
    std::vector<double> eta(full.size() - 1);
    for (std::size_t i = 0; i < eta.size(); ++i)
        eta[i] = std::log(full[i]) - log_last;
    return NaturalParams(std::move(eta));
}

MeanParams eta_to_lambda(const NaturalParams& eta)
{
    const auto e = eta.eta();
    const double m = std::max(0.0, *std::max_element(e.begin(), e.end()));
    std::vector<double> w(e.size());
    double z = std::exp(-m);
    for (std::size_t i = 0; i < e.size(); ++i) {
        w[i] = std::exp(e[i] - m);
        z += w[i];
    }
    for (double& v : w)
        v /= z;
    // Entries may underflow to zero for extreme eta, so skip the strict check.
    return MeanParams(SimplexPoint(std::move(w)), MeanParams::unchecked_tag{});
}

double log_density(const SimplexPoint& x, const NaturalParams& eta, double log_C)
{
    if (x.dim() != eta.dim())
        fail(ErrorCode::dimension_mismatch, "point has K=" + std::to_string(x.dim()) + " but eta has K=" +
                                                 std::to_string(eta.dim()));
    const auto c = x.coords();
    const auto e = eta.eta();
    return std::inner_product(c.begin(), c.end(), e.begin(), 0.0) - log_C;
}

} // namespace ccnorm
