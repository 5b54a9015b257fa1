#pragma once

#include "bigfloat.hpp"
#include "params.hpp"

#include <span>
#include <vector>

namespace ccnorm {

/// A full parameter vector with tied entries, stored as D distinct values
/// and their multiplicities.
class MultisetParams {
public:
    MultisetParams(std::vector<double> values, std::vector<int> multiplicities);

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<int>& multiplicities() const noexcept { return multiplicities_; }
    std::size_t distinct() const noexcept { return values_.size(); }
    int dim() const noexcept { return dim_; }

private:
    std::vector<double> values_;
    std::vector<int> multiplicities_;
    int dim_ = 0;
};

/// Exponents a_i of the moment E[prod u_i^{a_i}].
struct MomentIndex {
    std::vector<int> orders;

    int total() const noexcept;
};

inline constexpr int max_moment_order = 12;

/// Single-linkage clustering of the sorted entries with threshold tie_tol.
/// Clusters keep the order in which their first member appears in eta_full
/// and are represented by their mean. Throws AmbiguousTies when a chained
/// cluster spans more than tie_tol.
MultisetParams collapse_params(std::span<const double> eta_full, double tie_tol = 0.0);

/// C over the full K-vector described by ms.
EvalResult norm_const_repeated(const MultisetParams& ms);

enum class MomentBackend { closed_form_ad, oracle_fd };

/// E[prod u_i^{a_i}] for u ~ CC(values), values being the D >= 2 distinct
/// entries of a full vector.
double cc_moment(std::span<const double> values, const MomentIndex& idx, MomentBackend backend);

/// Runs both backends and throws MomentInconsistent unless they agree to
/// `sig_figs` significant figures. Returns the jet value.
double cc_moment_checked(std::span<const double> values, const MomentIndex& idx, int sig_figs = 4);

/// d^a C(values) / a! from jets, at adaptively chosen precision.
BigFloat taylor_coefficient(std::span<const double> values, const MomentIndex& idx);

} // namespace ccnorm
