#include "repeated.hpp"

#include "errors.hpp"
#include "jet.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

namespace ccnorm {

MultisetParams::MultisetParams(std::vector<double> values, std::vector<int> multiplicities)
    : values_(std::move(values)), multiplicities_(std::move(multiplicities))
{
    if (values_.empty())
        fail(ErrorCode::invalid_argument, "multiset needs at least one value");
    if (values_.size() != multiplicities_.size())
        fail(ErrorCode::dimension_mismatch, "values and multiplicities differ in length");
    for (double v : values_)
        if (!std::isfinite(v))
            fail(ErrorCode::domain, "multiset value is not finite");
    for (int r : multiplicities_) {
        if (r < 1)
            fail(ErrorCode::invalid_argument, "multiplicities must be >= 1");
        dim_ += r;
    }
    auto sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(ErrorCode::invalid_argument, "multiset values must be pairwise distinct");
}

int MomentIndex::total() const noexcept
{
    return std::accumulate(orders.begin(), orders.end(), 0);
}

MultisetParams collapse_params(std::span<const double> eta_full, double tie_tol)
{
    if (eta_full.empty())
        fail(ErrorCode::invalid_argument, "empty parameter vector");
    for (double v : eta_full)
        if (!std::isfinite(v))
            fail(ErrorCode::domain, "parameter vector has a non-finite entry");
    if (!(tie_tol >= 0.0) || !std::isfinite(tie_tol))
        fail(ErrorCode::invalid_argument, "tie_tol must be finite and >= 0");

    std::vector<std::size_t> order(eta_full.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return eta_full[a] < eta_full[b]; });

    struct Cluster {
        std::size_t first;
        double sum;
        int count;
    };
    std::vector<Cluster> clusters;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= order.size(); ++i) {
        if (i < order.size() && eta_full[order[i]] - eta_full[order[i - 1]] <= tie_tol)
            continue;
        const double lo = eta_full[order[start]];
        const double hi = eta_full[order[i - 1]];
        if (hi - lo > tie_tol) {
            std::ostringstream chain;
            chain.precision(17);
            for (std::size_t j = start; j < i; ++j)
                chain << (j > start ? " ~ " : "") << eta_full[order[j]];
            fail(ErrorCode::ambiguous_ties, "chained near-ties span more than tie_tol: " + chain.str());
        }
        Cluster c{order[start], 0.0, 0};
        for (std::size_t j = start; j < i; ++j) {
            c.first = std::min(c.first, order[j]);
            c.sum += eta_full[order[j]];
            ++c.count;
        }
        clusters.push_back(c);
        start = i;
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) { return a.first < b.first; });

    std::vector<double> values;
    std::vector<int> mult;
    for (const auto& c : clusters) {
        values.push_back(c.count == 1 ? c.sum : c.sum / c.count);
        mult.push_back(c.count);
    }
    return MultisetParams(std::move(values), std::move(mult));
}

namespace {

constexpr long start_bits = 128;
constexpr long limit_bits = 65536;
constexpr int settle_figs = 12;

void check_moment_args(std::span<const double> values, const MomentIndex& idx)
{
    if (values.size() != idx.orders.size())
        fail(ErrorCode::dimension_mismatch, "moment orders and values differ in length");
    if (values.size() < 2)
        fail(ErrorCode::invalid_argument, "moments need at least two distinct values");
    for (int a : idx.orders)
        if (a < 0)
            fail(ErrorCode::invalid_argument, "moment orders must be >= 0");
    if (idx.total() > max_moment_order)
        fail(ErrorCode::invalid_argument, "total moment order exceeds " + std::to_string(max_moment_order));
    for (double v : values)
        if (!std::isfinite(v))
            fail(ErrorCode::domain, "moment value is not finite");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(ErrorCode::degenerate_parameters, "moment values must be pairwise distinct");
}

// Doubles the precision until two successive positive results agree.
BigFloat settle(const std::function<BigFloat(long)>& eval, const char* what)
{
    BigFloat previous = eval(start_bits);
    double before = std::nan("");
    for (long bits = 2 * start_bits; bits <= limit_bits; bits *= 2) {
        BigFloat current = eval(bits);
        if (previous.sign() > 0 && current.sign() > 0 && agree_sig_figs(previous, current, settle_figs))
            return current;
        before = previous.to_double();
        previous = std::move(current);
    }
    throw PrecisionExhaustedError(std::string(what) + " did not settle within " + std::to_string(limit_bits) + " bits",
                                  before, previous.to_double());
}

struct JetOutput {
    BigFloat value;
    BigFloat top;
};

// Closed form over jets in t: sum_k e^{v_k + t_k} / prod_{i != k}(v_k + t_k - v_i - t_i).
JetOutput jet_closed_form(std::span<const double> values, const std::vector<int>& orders, long bits)
{
    using J = Jet<BigFloat>;
    auto shape = std::make_shared<const JetShape>(orders);
    std::vector<J> x;
    x.reserve(values.size());
    for (std::size_t v = 0; v < values.size(); ++v)
        x.push_back(J::variable(shape, BigFloat(values[v], bits), v));

    J sum(shape, BigFloat(bits));
    for (std::size_t k = 0; k < x.size(); ++k) {
        J denominator = J::constant(shape, BigFloat(1L, bits));
        for (std::size_t i = 0; i < x.size(); ++i)
            if (i != k)
                denominator = denominator * (x[k] - x[i]);
        sum += exp(x[k]) * reciprocal(denominator);
    }
    return {sum.value(), sum.top()};
}

BigFloat factorial_product(const std::vector<int>& orders, long bits)
{
    BigFloat f(1L, bits);
    for (int a : orders)
        f *= BigFloat::factorial(static_cast<unsigned long>(a), bits);
    return f;
}

double min_gap(std::span<const double> values)
{
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i)
        gap = std::min(gap, sorted[i] - sorted[i - 1]);
    return gap;
}

// Tensor central difference of C at step h, divided by h^|a|. Its error
// expands in even powers of h.
BigFloat central_difference(std::span<const double> values, const std::vector<int>& orders, const BigFloat& h)
{
    const long bits = h.bits();
    const std::size_t D = values.size();
    std::size_t points = 1;
    for (int a : orders)
        points *= static_cast<std::size_t>(a + 1);

    BigFloat sum(bits);
    std::vector<BigFloat> x(D, BigFloat(bits));
    for (std::size_t p = 0; p < points; ++p) {
        std::size_t rest = p;
        BigFloat weight(1L, bits);
        for (std::size_t v = 0; v < D; ++v) {
            const int a = orders[v];
            const int j = static_cast<int>(rest % static_cast<std::size_t>(a + 1));
            rest /= static_cast<std::size_t>(a + 1);
            // binom(a, j) (-1)^j at offset (a/2 - j) h.
            weight *= BigFloat::factorial(a, bits) / BigFloat::factorial(j, bits) / BigFloat::factorial(a - j, bits);
            if (j % 2 == 1)
                weight = -weight;
            x[v] = BigFloat(values[v], bits) + h * (0.5 * a - j);
        }
        sum += weight * closed_form_big(x);
    }
    BigFloat scale(1L, bits);
    for (int m = 0; m < std::accumulate(orders.begin(), orders.end(), 0); ++m)
        scale *= h;
    return sum / scale;
}

// d^a C by Richardson-extrapolated central differences; the step balances
// rounding (eps / h^|a|) against the h^4 truncation term.
BigFloat fd_derivative(std::span<const double> values, const std::vector<int>& orders, long bits)
{
    const int total = std::accumulate(orders.begin(), orders.end(), 0);
    if (total == 0)
        return closed_form_big(values, bits);
    const double balanced = std::ldexp(1.0, -static_cast<int>(bits / (total + 4)));
    const double h = std::min(balanced, min_gap(values) / (2.0 * (total + 2)));
    const BigFloat coarse = central_difference(values, orders, BigFloat(h, bits));
    const BigFloat fine = central_difference(values, orders, BigFloat(h / 2.0, bits));
    return (fine * 4.0 - coarse) / 3.0;
}

} // namespace

BigFloat taylor_coefficient(std::span<const double> values, const MomentIndex& idx)
{
    check_moment_args(values, idx);
    return settle([&](long bits) { return jet_closed_form(values, idx.orders, bits).top; }, "jet evaluation");
}

EvalResult norm_const_repeated(const MultisetParams& ms)
{
    const int K = ms.dim();
    if (ms.distinct() == 1) {
        // CC_1 is a point mass at u = 1.
        const double log_abs = ms.values()[0] - std::lgamma(static_cast<double>(K));
        return make_result(log_abs, 1, Method::repeated, PrecisionTag::of(Precision::binary64));
    }
    MomentIndex idx;
    for (int r : ms.multiplicities())
        idx.orders.push_back(r - 1);
    const BigFloat c = taylor_coefficient(ms.values(), idx);
    EvalResult r = make_result(c.log10_abs() * std::numbers::ln10, c.sign(), Method::repeated,
                               PrecisionTag::arbitrary(c.bits()));
    r.value = c.to_double();
    return r;
}

double cc_moment(std::span<const double> values, const MomentIndex& idx, MomentBackend backend)
{
    check_moment_args(values, idx);
    const BigFloat m = settle(
        [&](long bits) {
            if (backend == MomentBackend::closed_form_ad) {
                const JetOutput j = jet_closed_form(values, idx.orders, bits);
                return j.top * factorial_product(idx.orders, bits) / j.value;
            }
            return fd_derivative(values, idx.orders, bits) / closed_form_big(values, bits);
        },
        backend == MomentBackend::closed_form_ad ? "jet moment" : "finite-difference moment");
    return m.to_double();
}

double cc_moment_checked(std::span<const double> values, const MomentIndex& idx, int sig_figs)
{
    const double ad = cc_moment(values, idx, MomentBackend::closed_form_ad);
    const double fd = cc_moment(values, idx, MomentBackend::oracle_fd);
    if (!agree_sig_figs(ad, fd, sig_figs)) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "moment backends disagree: jet " << ad << " vs finite difference " << fd;
        fail(ErrorCode::moment_inconsistent, msg.str());
    }
    return ad;
}

} // namespace ccnorm
