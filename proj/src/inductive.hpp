#pragma once

#include "bigfloat.hpp"
#include "params.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ccnorm {

struct OrderingStrategy {
    enum class Kind { as_given, ascending, descending, random };

    Kind kind = Kind::as_given;
    std::uint64_t seed = 0;

    static OrderingStrategy as_given() { return {}; }
    static OrderingStrategy ascending() { return {Kind::ascending, 0}; }
    static OrderingStrategy descending() { return {Kind::descending, 0}; }
    static OrderingStrategy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Permutation of 0..n-1 to apply to the full K-vector.
std::vector<std::size_t> ordering_permutation(std::span<const double> full, const OrderingStrategy& order);

/// Series 1 + xi/2! + xi^2/3! + ... (n_terms terms) for (e^xi - 1)/xi.
template <typename T>
T cb_norm_taylor(T xi, int n_terms)
{
    // Horner on sum_{m < n} xi^m / (m+1)!.
    T acc = T(1);
    for (int m = n_terms - 1; m >= 1; --m)
        acc = T(1) + acc * xi / T(m + 1);
    return acc;
}

/// Below this |xi| the first-stage updates use the series instead of
/// (e^xi - 1)/xi.
inline constexpr double taylor_switch = 1e-2;
inline constexpr int taylor_terms = 12;

/// Dimension recursion (divided-difference table of exp over the ordered
/// full parameter vector). The ordering is applied to the full K-vector, then
/// the vector is re-normalized so its last entry is zero.
EvalResult norm_const_inductive(const NaturalParams& eta, const OrderingStrategy& order, Precision precision);

/// Same recursion with every operation at `bits` of binary precision.
BigFloat norm_const_inductive_big(const NaturalParams& eta, const OrderingStrategy& order, long bits);

} // namespace ccnorm
