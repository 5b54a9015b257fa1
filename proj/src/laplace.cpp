#include "laplace.hpp"

#include "errors.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ccnorm {

using cplx = std::complex<double>;

LaplaceImage::LaplaceImage(std::vector<double> poles, double shift) : poles_(std::move(poles)), shift_(shift)
{
    if (poles_.empty())
        fail(ErrorCode::invalid_argument, "Laplace image needs at least one pole");
    for (double p : poles_)
        if (!std::isfinite(p))
            fail(ErrorCode::domain, "Laplace image pole is not finite");
    if (!std::isfinite(shift_))
        fail(ErrorCode::domain, "Laplace image shift is not finite");
}

LaplaceImage LaplaceImage::for_params(const NaturalParams& eta)
{
    auto poles = eta.full();
    const double top = *std::max_element(poles.begin(), poles.end());
    double shift = top + 1.0;
    // top - (top + 1) can round to just above -1.
    while (top - shift > -1.0)
        shift = std::nextafter(shift, std::numeric_limits<double>::infinity());
    return LaplaceImage(std::move(poles), shift);
}

double LaplaceImage::max_shifted_pole() const noexcept
{
    return *std::max_element(poles_.begin(), poles_.end()) - shift_;
}

cplx image_eval(const LaplaceImage& image, cplx s)
{
    cplx log_sum = 0.0;
    for (double p : image.poles()) {
        const cplx d = s - (p - image.shift());
        if (d == cplx(0.0))
            fail(ErrorCode::pole_hit, "image evaluated at its pole s = " + std::to_string(p - image.shift()));
        log_sum += std::log(d);
    }
    return std::exp(-log_sum);
}

BigFloat image_eval_real(const LaplaceImage& image, const BigFloat& s)
{
    BigFloat denominator(1L, s.bits());
    for (double p : image.poles()) {
        BigFloat d = s - BigFloat(p, s.bits());
        d += image.shift();
        if (!(d.sign() > 0))
            fail(ErrorCode::pole_hit, "real-axis image evaluation at or left of a pole");
        denominator *= d;
    }
    return BigFloat(1L, s.bits()) / denominator;
}

void InversionSettings::validate() const
{
    if (stehfest_N < 2 || stehfest_N % 2 != 0)
        fail(ErrorCode::invalid_argument, "stehfest_N must be an even integer >= 2");
    if (stehfest_bits < 53)
        fail(ErrorCode::invalid_argument, "stehfest_bits must be >= 53");
    if (dehoog_M < 2)
        fail(ErrorCode::invalid_argument, "dehoog_M must be >= 2");
    if (!(dehoog_tol > 0.0 && dehoog_tol < 1.0))
        fail(ErrorCode::invalid_argument, "dehoog_tol must lie in (0, 1)");
    if (talbot_M < 2)
        fail(ErrorCode::invalid_argument, "talbot_M must be >= 2");
}

namespace {

[[noreturn]] void diverged(const char* method, const std::string& detail)
{
    fail(ErrorCode::inversion_diverged, std::string(method) + " inversion diverged: " + detail);
}

// Gaver-Stehfest weights V_1..V_N.
std::vector<BigFloat> stehfest_weights(int N, long bits)
{
    const int half = N / 2;
    std::vector<BigFloat> v;
    v.reserve(N);
    for (int k = 1; k <= N; ++k) {
        BigFloat sum(bits);
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            BigFloat term(1L, bits);
            for (int p = 0; p < half; ++p)
                term *= static_cast<double>(j);
            term *= BigFloat::factorial(2 * j, bits);
            term /= BigFloat::factorial(half - j, bits);
            term /= BigFloat::factorial(j, bits);
            term /= BigFloat::factorial(j - 1, bits);
            term /= BigFloat::factorial(k - j, bits);
            term /= BigFloat::factorial(2 * j - k, bits);
            sum += term;
        }
        v.push_back((k + half) % 2 == 0 ? sum : -sum);
    }
    return v;
}

EvalResult invert_stehfest(const LaplaceImage& image, double t, const InversionSettings& settings)
{
    const long bits = settings.stehfest_bits;
    const auto weights = stehfest_weights(settings.stehfest_N, bits);
    const BigFloat step = BigFloat::ln2(bits) / t;
    BigFloat sum(bits);
    for (int k = 1; k <= settings.stehfest_N; ++k)
        sum += weights[k - 1] * image_eval_real(image, step * static_cast<double>(k));
    BigFloat value = step * sum;
    value *= exp(BigFloat(image.shift(), bits) * t);
    if (!value.is_finite())
        diverged("Stehfest", "non-finite result");
    EvalResult r = make_result(value.log10_abs() * std::numbers::ln10, value.sign(), Method::stehfest,
                               PrecisionTag::arbitrary(bits));
    r.value = value.to_double();
    return r;
}

// Fourier-series inversion on Re(s) = gamma with the quotient-difference
// continued-fraction acceleration and the improved remainder estimate.
EvalResult invert_dehoog(const LaplaceImage& image, double t, const InversionSettings& settings)
{
    const int M = settings.dehoog_M;
    const int terms = 2 * M + 1;
    const double T = 2.0 * t;
    const double alpha = image.max_shifted_pole();
    const double gamma = alpha - std::log(settings.dehoog_tol) / (2.0 * T);

    std::vector<cplx> a(terms);
    for (int k = 0; k < terms; ++k)
        a[k] = image_eval(image, cplx(gamma, k * std::numbers::pi / T));
    a[0] *= 0.5;

    // q[r][j], e[r][j] for r = 0..M.
    std::vector<std::vector<cplx>> q(M + 1, std::vector<cplx>(terms));
    std::vector<std::vector<cplx>> e(M + 1, std::vector<cplx>(terms));
    for (int j = 0; j < 2 * M; ++j)
        q[1][j] = a[j + 1] / a[j];
    for (int r = 1; r <= M; ++r) {
        for (int j = 0; j <= 2 * (M - r); ++j)
            e[r][j] = q[r][j + 1] - q[r][j] + e[r - 1][j + 1];
        if (r < M)
            for (int j = 0; j < 2 * (M - r); ++j)
                q[r + 1][j] = q[r][j + 1] * e[r][j + 1] / e[r][j];
    }

    std::vector<cplx> d(terms);
    d[0] = a[0];
    for (int r = 1; r <= M; ++r) {
        d[2 * r - 1] = -q[r][0];
        d[2 * r] = -e[r][0];
    }

    const cplx z = std::exp(cplx(0.0, std::numbers::pi * t / T));
    // A[n + 1], B[n + 1] hold A_n, B_n for n = -1..2M.
    std::vector<cplx> A(terms + 1), B(terms + 1);
    A[0] = 0.0;
    A[1] = d[0];
    B[0] = 1.0;
    B[1] = 1.0;
    for (int n = 1; n <= 2 * M; ++n) {
        A[n + 1] = A[n] + d[n] * z * A[n - 1];
        B[n + 1] = B[n] + d[n] * z * B[n - 1];
    }
    const cplx h = 0.5 * (1.0 + (d[2 * M - 1] - d[2 * M]) * z);
    const cplx remainder = -h * (1.0 - std::sqrt(1.0 + d[2 * M] * z / (h * h)));
    A[2 * M + 1] = A[2 * M] + remainder * A[2 * M - 1];
    B[2 * M + 1] = B[2 * M] + remainder * B[2 * M - 1];

    const double series = (A[2 * M + 1] / B[2 * M + 1]).real();
    if (!std::isfinite(series))
        diverged("De Hoog", "non-finite continued fraction");
    // exp(gamma t) / T * series, then undo the shift.
    const double log_scale = (gamma + image.shift()) * t - std::log(T);
    if (series == 0.0)
        return make_result(0.0, Method::dehoog, PrecisionTag::of(Precision::binary64));
    return make_result(log_scale + std::log(std::fabs(series)), series < 0.0 ? -1 : 1, Method::dehoog,
                       PrecisionTag::of(Precision::binary64));
}

// Fixed-Talbot contour s(theta) = r theta (cot theta + i), r = 2M / (5t).
EvalResult invert_talbot(const LaplaceImage& image, double t, const InversionSettings& settings)
{
    const int M = settings.talbot_M;
    const double r = 2.0 * M / (5.0 * t);
    double sum = 0.5 * (image_eval(image, cplx(r, 0.0)) * std::exp(r * t)).real();
    for (int k = 1; k < M; ++k) {
        const double theta = k * std::numbers::pi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const cplx s = r * theta * cplx(cot, 1.0);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        sum += (std::exp(t * s) * image_eval(image, s) * cplx(1.0, sigma)).real();
    }
    if (!std::isfinite(sum))
        diverged("Talbot", "non-finite contour sum");
    const double value = r / M * sum * std::exp(image.shift() * t);
    if (!std::isfinite(value))
        diverged("Talbot", "non-finite result");
    return make_result(value, Method::talbot, PrecisionTag::of(Precision::binary64));
}

} // namespace

EvalResult invert(const LaplaceImage& image, double t, const InversionSettings& settings)
{
    settings.validate();
    if (!(t > 0.0) || !std::isfinite(t))
        fail(ErrorCode::invalid_argument, "inversion time t must be positive and finite");
    if (!image.inversion_ready())
        fail(ErrorCode::invalid_argument, "Laplace image must be shifted so every pole is <= -1 before inversion");
    switch (settings.method) {
    case InversionMethod::stehfest: return invert_stehfest(image, t, settings);
    case InversionMethod::dehoog: return invert_dehoog(image, t, settings);
    case InversionMethod::talbot: return invert_talbot(image, t, settings);
    }
    fail(ErrorCode::invalid_argument, "unknown inversion method");
}

EvalResult norm_const_laplace(const NaturalParams& eta, const InversionSettings& settings)
{
    return invert(LaplaceImage::for_params(eta), 1.0, settings);
}

double scaled_c(const NaturalParams& eta, double t)
{
    if (!(t > 0.0) || !std::isfinite(t))
        fail(ErrorCode::invalid_argument, "scaled_c needs t > 0");
    std::vector<double> scaled(eta.eta().begin(), eta.eta().end());
    for (double& v : scaled)
        v *= t;
    const NaturalParams scaled_eta(std::move(scaled));
    const double log_c = oracle_log10_abs(scaled_eta) * std::numbers::ln10 +
                         static_cast<double>(eta.dim() - 1) * std::log(t);
    return std::exp(log_c);
}

} // namespace ccnorm
