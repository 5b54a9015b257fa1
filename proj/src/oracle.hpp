#pragma once

#include "bigfloat.hpp"
#include "params.hpp"

#include <span>
#include <vector>

namespace ccnorm {

/// Precision schedule for the adaptive arbitrary-precision oracle.
struct OracleConfig {
    int target_sig_figs = 4;
    long initial_bits = 64;
    long max_bits = 65536;
    long growth = 2;

    void validate() const;
};

/// The closed form evaluated at a fixed binary precision on a full K-vector.
BigFloat closed_form_big(std::span<const BigFloat> full);
BigFloat closed_form_big(std::span<const double> full, long bits);

struct OracleValue {
    BigFloat value;
    long bits;
};

/// Re-evaluates the closed form at growing precision until two successive
/// values agree to cfg.target_sig_figs significant figures. Operates on a full
/// K-vector; throws PrecisionExhaustedError at cfg.max_bits.
OracleValue oracle_big(std::span<const double> full, const OracleConfig& cfg = {});

EvalResult norm_const_oracle(const NaturalParams& eta, const OracleConfig& cfg = {});

/// log10 C(eta) from the oracle, valid far outside double range.
double oracle_log10_abs(const NaturalParams& eta);

/// Nested adaptive Gauss-Kronrod quadrature of the iterated integral of
/// exp(eta . x) over the simplex. Shares nothing with the closed form.
/// Supports 2 <= K <= 5. Cost rises steeply for rel_tol below about 1e-10.
double norm_const_quadrature(const NaturalParams& eta, double rel_tol);

} // namespace ccnorm
