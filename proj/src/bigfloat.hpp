#pragma once

// Value-semantics wrapper around an MPFR number with an explicit binary
// precision. Binary operations produce a result at the larger of the two
// operand precisions; all operations round to nearest.

#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace ccnorm {

class BigFloat {
public:
    using bits_t = mpfr_prec_t;

    explicit BigFloat(bits_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    BigFloat(double x, bits_t bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(long x, bits_t bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(int x, bits_t bits) : BigFloat(static_cast<long>(x), bits) {}

    BigFloat(const BigFloat& o) { mpfr_init2(v_, o.bits()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept
    {
        // Leave the moved-from object holding a valid 2-bit zero.
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, o.bits());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    bits_t bits() const noexcept { return mpfr_get_prec(v_); }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const noexcept { return mpfr_sgn(v_); }
    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }

    /// log10|x| without leaving double range (works for 1e-100000).
    double log10_abs() const;

    /// Decimal mantissa digits and exponent after rounding to `digits`
    /// significant figures, as produced by mpfr_get_str.
    std::pair<std::string, long> round_decimal(int digits) const;

    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    BigFloat& operator+=(const BigFloat& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
    BigFloat& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

    BigFloat operator-() const { BigFloat r(bits()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator+(BigFloat a, double b) { return a += b; }
    friend BigFloat operator-(BigFloat a, double b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, double b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, double b) { return a /= b; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend BigFloat exp(const BigFloat& x) { BigFloat r(x.bits()); mpfr_exp(r.v_, x.v_, MPFR_RNDN); return r; }
    friend BigFloat log(const BigFloat& x) { BigFloat r(x.bits()); mpfr_log(r.v_, x.v_, MPFR_RNDN); return r; }
    friend BigFloat expm1(const BigFloat& x) { BigFloat r(x.bits()); mpfr_expm1(r.v_, x.v_, MPFR_RNDN); return r; }
    friend BigFloat abs(const BigFloat& x) { BigFloat r(x.bits()); mpfr_abs(r.v_, x.v_, MPFR_RNDN); return r; }
    friend BigFloat sqrt(const BigFloat& x) { BigFloat r(x.bits()); mpfr_sqrt(r.v_, x.v_, MPFR_RNDN); return r; }

    static BigFloat ln2(bits_t bits) { BigFloat r(bits); mpfr_const_log2(r.v_, MPFR_RNDN); return r; }
    static BigFloat factorial(unsigned long n, bits_t bits) { BigFloat r(bits); mpfr_fac_ui(r.v_, n, MPFR_RNDN); return r; }

private:
    void widen(const BigFloat& o)
    {
        if (o.bits() > bits())
            mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    }

    mpfr_t v_;
};

/// Significant-figure agreement: both values rounded to `digits` decimal
/// significant figures compare equal.
bool agree_sig_figs(const BigFloat& a, const BigFloat& b, int digits);
bool agree_sig_figs(double a, double b, int digits);

/// Largest n in [0, max_digits] such that a and b agree to every m <= n figures.
int correct_sig_figs(double computed, double reference, int max_digits = 17);

} // namespace ccnorm
