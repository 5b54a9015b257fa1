#include "inductive.hpp"

#include "closed_form.hpp"
#include "errors.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ccnorm {

std::vector<std::size_t> ordering_permutation(std::span<const double> full, const OrderingStrategy& order)
{
    std::vector<std::size_t> perm(full.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    switch (order.kind) {
    case OrderingStrategy::Kind::as_given:
        break;
    case OrderingStrategy::Kind::ascending:
        std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return full[a] < full[b]; });
        break;
    case OrderingStrategy::Kind::descending:
        std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return full[a] > full[b]; });
        break;
    case OrderingStrategy::Kind::random: {
        CounterRng rng(order.seed);
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        break;
    }
    }
    return perm;
}

namespace {

struct Ordered {
    std::vector<double> nodes; // last entry is the normalization shift
};

Ordered ordered_nodes(const NaturalParams& eta, const OrderingStrategy& order)
{
    const auto full = eta.full();
    require_distinct(full);
    const auto perm = ordering_permutation(full, order);
    Ordered out;
    out.nodes.reserve(full.size());
    for (std::size_t i : perm)
        out.nodes.push_back(full[i]);
    return out;
}

// c_j starts as 1 (= e^{-x_j} exp[x_j]); after stage k, c_i holds
// e^{-x_{k+i}} exp[x_1, ..., x_k, x_{k+i}], the divided difference of exp.
// The table therefore needs K entries, one per node.
template <typename T, typename Make, typename FirstStage>
T recursion(const std::vector<T>& x, Make make, FirstStage first_stage)
{
    using std::exp;
    const std::size_t K = x.size();
    std::vector<T> c(K, make(1.0));
    std::vector<T> next(K, make(0.0));
    for (std::size_t k = 0; k + 1 < K; ++k) {
        for (std::size_t i = 1; i < K - k; ++i) {
            const T xi = x[k] - x[k + i];
            if (xi == make(0.0))
                fail(ErrorCode::degenerate_parameters,
                     "xi vanished at stage " + std::to_string(k + 1) + "; use the repeated-parameter method");
            if (k == 0) {
                next[i - 1] = first_stage(xi);
            } else {
                const T growth = exp(xi);
                next[i - 1] = (growth * c[0] - c[i]) / xi;
            }
        }
        for (std::size_t i = 0; i + 1 < K - k; ++i)
            c[i] = next[i];
    }
    return c[0];
}

template <typename T>
double run_native(const Ordered& o)
{
    const std::size_t K = o.nodes.size();
    const T last = static_cast<T>(o.nodes.back());
    std::vector<T> x(K);
    for (std::size_t i = 0; i < K; ++i)
        x[i] = static_cast<T>(o.nodes[i]) - last;
    auto make = [](double v) { return static_cast<T>(v); };
    auto first_stage = [](T xi) {
        if (std::fabs(xi) < static_cast<T>(taylor_switch))
            return cb_norm_taylor<T>(xi, taylor_terms);
        const T growth = std::exp(xi);
        if (std::isinf(growth))
            fail(ErrorCode::overflow_in_summand, "exp(xi) overflows in the inductive recursion");
        return (growth - T(1)) / xi;
    };
    T value = recursion<T>(x, make, first_stage);
    value *= std::exp(last);
    if (!std::isfinite(value))
        fail(ErrorCode::overflow_in_summand, "inductive recursion overflowed");
    return static_cast<double>(value);
}

} // namespace

EvalResult norm_const_inductive(const NaturalParams& eta, const OrderingStrategy& order, Precision precision)
{
    const Ordered o = ordered_nodes(eta, order);
    const double value = precision == Precision::binary32 ? run_native<float>(o) : run_native<double>(o);
    EvalResult r = make_result(value, Method::inductive, PrecisionTag::of(precision));
    r.diagnostics = cancellation_diagnostics(eta);
    return r;
}

BigFloat norm_const_inductive_big(const NaturalParams& eta, const OrderingStrategy& order, long bits)
{
    const Ordered o = ordered_nodes(eta, order);
    const std::size_t K = o.nodes.size();
    const BigFloat last(o.nodes.back(), bits);
    std::vector<BigFloat> x;
    x.reserve(K);
    for (double v : o.nodes)
        x.push_back(BigFloat(v, bits) - last);
    auto make = [bits](double v) { return BigFloat(v, bits); };
    auto first_stage = [](const BigFloat& xi) { return expm1(xi) / xi; };
    return recursion<BigFloat>(x, make, first_stage) * exp(last);
}

} // namespace ccnorm
