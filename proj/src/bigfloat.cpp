#include "bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace ccnorm {

double BigFloat::log10_abs() const
{
    if (is_zero())
        return -std::numeric_limits<double>::infinity();
    if (!is_finite())
        return std::numeric_limits<double>::infinity();
    long exponent = 0;
    const double mantissa = mpfr_get_d_2exp(&exponent, v_, MPFR_RNDN);
    return std::log10(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log10(2.0);
}

std::pair<std::string, long> BigFloat::round_decimal(int digits) const
{
    if (is_zero())
        return {"0", 0};
    mpfr_exp_t exponent = 0;
    char* str = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::pair<std::string, long> out{str, static_cast<long>(exponent)};
    mpfr_free_str(str);
    return out;
}

bool agree_sig_figs(const BigFloat& a, const BigFloat& b, int digits)
{
    if (!a.is_finite() || !b.is_finite())
        return false;
    return a.round_decimal(digits) == b.round_decimal(digits);
}

bool agree_sig_figs(double a, double b, int digits)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        return false;
    if (a == 0.0 || b == 0.0)
        return a == b;
    char sa[64];
    char sb[64];
    std::snprintf(sa, sizeof sa, "%.*e", digits - 1, a);
    std::snprintf(sb, sizeof sb, "%.*e", digits - 1, b);
    return std::string_view(sa) == std::string_view(sb);
}

int correct_sig_figs(double computed, double reference, int max_digits)
{
    int n = 0;
    while (n < max_digits && agree_sig_figs(computed, reference, n + 1))
        ++n;
    return n;
}

} // namespace ccnorm
