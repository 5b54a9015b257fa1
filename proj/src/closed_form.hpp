#pragma once

#include "params.hpp"

#include <span>
#include <vector>

namespace ccnorm {

/// Throws DegenerateParameters if two entries of the full K-vector are
/// exactly equal. Near-ties are not errors.
void require_distinct(std::span<const double> full);

/// The K summands e^{eta_k} / prod_{i != k}(eta_k - eta_i) of the closed form,
/// every intermediate rounded to the selected precision. Row products carry a
/// separate power-of-two exponent so they neither overflow nor underflow.
std::vector<double> closed_form_summands(const NaturalParams& eta, Precision precision);

/// Direct evaluation of the closed form (difference matrix, row products,
/// multiply by e^{eta_k}, sum) in binary32 or binary64. Diagnostics are
/// always computed in binary64.
EvalResult norm_const_closed(const NaturalParams& eta, Precision precision);

struct SignedLog {
    double log_abs;
    int sign;
};

/// log|C| and sign(C) from the signed log-sum-exp rewrite of the closed form.
/// Never overflows; it does not cure cancellation.
SignedLog log_norm_const_signed(const NaturalParams& eta);

/// log10 of the largest |summand|, without overflow.
double log10_max_summand(const NaturalParams& eta);

/// Beyond this many lost digits the binary64 magnitude of C is itself
/// cancellation noise (garbage sits near eps * max summand, i.e. 13-16 orders
/// below it), so the report switches to the oracle.
inline constexpr double oracle_handoff_digits = 12.0;

/// Compares the largest summand with |C|, taking |C| from the oracle past
/// oracle_handoff_digits.
CancellationReport cancellation_diagnostics(const NaturalParams& eta);

} // namespace ccnorm
