#pragma once

#include "bigfloat.hpp"
#include "params.hpp"

#include <complex>
#include <vector>

namespace ccnorm {

/// The Laplace image s -> prod_i 1 / (s - (p_i - shift)) of
/// c(t) = int_{sum x <= t} exp(eta . x) dx. The inverse transform of the
/// shifted image is exp(-shift * t) c(t).
class LaplaceImage {
public:
    LaplaceImage(std::vector<double> poles, double shift);

    /// Poles (eta_1, ..., eta_{K-1}, 0) shifted by max(eta) + 1 so every
    /// shifted pole is <= -1.
    static LaplaceImage for_params(const NaturalParams& eta);

    const std::vector<double>& poles() const noexcept { return poles_; }
    double shift() const noexcept { return shift_; }
    double max_shifted_pole() const noexcept;

    /// True when every shifted pole is <= -1, as the inversion routines need.
    bool inversion_ready() const noexcept { return max_shifted_pole() <= -1.0; }

private:
    std::vector<double> poles_;
    double shift_;
};

/// prod_i 1/(s - shifted p_i), evaluated as exp(-sum log(s - p_i)). Repeated
/// poles are fine. Throws PoleHit if s coincides with a pole.
std::complex<double> image_eval(const LaplaceImage& image, std::complex<double> s);

/// Real-axis evaluation in arbitrary precision; s must exceed every shifted pole.
BigFloat image_eval_real(const LaplaceImage& image, const BigFloat& s);

enum class InversionMethod { talbot, stehfest, dehoog };

struct InversionSettings {
    InversionMethod method = InversionMethod::dehoog;
    int stehfest_N = 28;
    long stehfest_bits = 256;
    int dehoog_M = 20;
    double dehoog_tol = 1e-10;
    int talbot_M = 32;

    void validate() const;
};

/// Numerically inverts the image at t > 0 and undoes the shift, so the
/// result approximates c(t); t = 1 gives C(eta).
EvalResult invert(const LaplaceImage& image, double t, const InversionSettings& settings);

/// C(eta) via the inverse Laplace transform at t = 1.
EvalResult norm_const_laplace(const NaturalParams& eta, const InversionSettings& settings);

/// c(t) = t^{K-1} C(t * eta), from the oracle.
double scaled_c(const NaturalParams& eta, double t);

} // namespace ccnorm
