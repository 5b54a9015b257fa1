#include "bench.hpp"

#include "closed_form.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "oracle.hpp"
#include "rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

namespace ccnorm {

std::vector<double> default_sigmas()
{
    std::vector<double> s;
    for (int i = 0; i <= 12; ++i)
        s.push_back(std::pow(10.0, -2.0 + i / 3.0));
    return s;
}

void ExperimentConfig::validate() const
{
    if (k_max < 3)
        fail(ErrorCode::invalid_argument, "k_max must be >= 3");
    if (draws_per_sigma < 1)
        fail(ErrorCode::invalid_argument, "draws_per_sigma must be >= 1");
    if (sig_figs_required < 1)
        fail(ErrorCode::invalid_argument, "sig_figs_required must be >= 1");
    if (sigmas.empty())
        fail(ErrorCode::invalid_argument, "at least one sigma is required");
    for (double s : sigmas)
        if (!(s > 0.0) || !std::isfinite(s))
            fail(ErrorCode::invalid_argument, "sigmas must be positive and finite");
    if (methods.empty())
        fail(ErrorCode::invalid_argument, "at least one method is required");
    for (Method m : methods)
        if (m == Method::oracle || m == Method::repeated || m == Method::quadrature)
            fail(ErrorCode::invalid_argument, "bench methods must be approximate backends, not " +
                                                  std::string(method_name(m)));
}

namespace {

// Runs body(i) for i in [0, n) on a small pool; results go to slot i, so the
// output is independent of scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<double> draw_normals(std::uint64_t key, std::size_t n, double sigma)
{
    CounterRng rng(key);
    std::vector<double> eta(n);
    for (double& v : eta)
        v = sigma * rng.normal();
    return eta;
}

bool matches(const EvalResult& r, const BigFloat& reference, int sig_figs)
{
    if (!std::isfinite(r.value) || r.value == 0.0)
        return false;
    return agree_sig_figs(BigFloat(r.value, 64), reference, sig_figs);
}

std::vector<double> ramp(int K)
{
    std::vector<double> eta;
    for (int i = 1; i < K; ++i)
        eta.push_back(i);
    return eta;
}

double unit_roundoff(Precision p)
{
    return p == Precision::binary32 ? std::ldexp(1.0, -24) : std::ldexp(1.0, -53);
}

} // namespace

std::vector<Figure1Record> run_figure1(const ExperimentConfig& cfg)
{
    cfg.validate();
    const int ks = cfg.k_max - 2;
    std::vector<Figure1Record> rows(static_cast<std::size_t>(ks) * cfg.draws_per_sigma);
    parallel_for(rows.size(), cfg.threads, [&](std::size_t cell) {
        const int K = 3 + static_cast<int>(cell) / cfg.draws_per_sigma;
        const int draw = static_cast<int>(cell) % cfg.draws_per_sigma;
        const NaturalParams eta(draw_normals(derive_seed(cfg.seed, K, draw), K - 1, 1.0));
        Figure1Record r{1.0, draw, K, std::nan(""), log10_max_summand(eta), Region::red, true};
        try {
            r.log10_abs_C = oracle_log10_abs(eta);
            r.region = classify_gap(r.log10_max_summand - r.log10_abs_C);
        } catch (const PrecisionExhaustedError&) {
            r.oracle_converged = false;
        }
        rows[cell] = r;
    });
    return rows;
}

int frontier_from_verdicts(const std::string& verdicts, int k_max)
{
    const auto first_fail = verdicts.find_first_not_of('1');
    const int highest = first_fail == std::string::npos ? k_max : static_cast<int>(first_fail) + 1;
    return std::clamp(highest, 2, k_max);
}

std::vector<Figure2Record> run_figure2(const ExperimentConfig& cfg)
{
    cfg.validate();
    const std::size_t n_methods = cfg.methods.size();
    const std::size_t cells = cfg.sigmas.size() * static_cast<std::size_t>(cfg.draws_per_sigma);
    std::vector<Figure2Record> rows(cells * n_methods);

    OracleConfig oracle_cfg;
    // Headroom so rounding the reference to sig_figs_required is itself exact.
    oracle_cfg.target_sig_figs = cfg.sig_figs_required + 3;

    parallel_for(cells, cfg.threads, [&](std::size_t cell) {
        const std::size_t s = cell / cfg.draws_per_sigma;
        const int draw = static_cast<int>(cell % cfg.draws_per_sigma);
        const double sigma = cfg.sigmas[s];
        const auto all = draw_normals(derive_seed(cfg.seed, s, draw), cfg.k_max - 1, sigma);

        std::vector<std::string> verdicts(n_methods);
        for (int K = 2; K <= cfg.k_max; ++K) {
            const std::vector<double> prefix(all.begin(), all.begin() + (K - 1));
            const NaturalParams eta(prefix);
            std::optional<BigFloat> reference;
            try {
                reference = oracle_big(eta.full(), oracle_cfg).value;
            } catch (const PrecisionExhaustedError&) {
            }
            for (std::size_t m = 0; m < n_methods; ++m) {
                char v = '?';
                if (reference) {
                    try {
                        v = matches(evaluate(eta, cfg.methods[m]), *reference, cfg.sig_figs_required) ? '1' : '0';
                    } catch (const Error&) {
                        v = '0';
                    }
                }
                verdicts[m] += v;
            }
        }
        for (std::size_t m = 0; m < n_methods; ++m)
            rows[cell * n_methods + m] = {sigma, draw, cfg.methods[m], frontier_from_verdicts(verdicts[m], cfg.k_max),
                                          verdicts[m]};
    });
    return rows;
}

std::optional<int> first_total_failure(Precision precision, int limit)
{
    for (int K = 2; K <= limit; ++K) {
        const NaturalParams eta(ramp(K));
        const double reference = norm_const_oracle(eta).value;
        double value = 0.0;
        try {
            value = norm_const_closed(eta, precision).value;
        } catch (const Error&) {
            return K;
        }
        if (correct_sig_figs(value, reference) == 0)
            return K;
    }
    return std::nullopt;
}

MilestoneTable digit_loss_milestones(const std::vector<int>& ks, int scan_limit)
{
    MilestoneTable table;
    for (int K : ks) {
        if (K < 2)
            fail(ErrorCode::invalid_argument, "milestone dimensions must be >= 2");
        const NaturalParams eta(ramp(K));
        const CancellationReport diag = cancellation_diagnostics(eta);
        const double reference = norm_const_oracle(eta).value;
        for (Precision p : {Precision::binary32, Precision::binary64}) {
            MilestoneRecord r{K, p, diag.log10_max_abs_summand, diag.log10_abs_result, diag.digits_lost_estimate,
                              std::nan(""), 0, std::nan("")};
            try {
                const double value = norm_const_closed(eta, p).value;
                r.relative_error = std::fabs(value - reference) / std::fabs(reference);
                r.correct_sig_figs = correct_sig_figs(value, reference);
                r.digits_lost_measured =
                    r.relative_error > 0.0 ? std::max(0.0, std::log10(r.relative_error / unit_roundoff(p))) : 0.0;
            } catch (const Error&) {
            }
            table.rows.push_back(r);
        }
    }
    table.binary32_first_total_failure = first_total_failure(Precision::binary32, scan_limit);
    table.binary64_first_total_failure = first_total_failure(Precision::binary64, scan_limit);
    return table;
}

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string opt(const std::optional<int>& k)
{
    return k ? std::to_string(*k) : "";
}

std::string_view precision_name(Precision p)
{
    return p == Precision::binary32 ? "binary32" : "binary64";
}

} // namespace

void write_figure1_csv(std::ostream& out, const std::vector<Figure1Record>& rows)
{
    out << "sigma,draw_index,K,log10_abs_C,log10_max_summand,region,oracle_converged\n";
    for (const auto& r : rows)
        out << num(r.sigma) << ',' << r.draw_index << ',' << r.K << ',' << num(r.log10_abs_C) << ','
            << num(r.log10_max_summand) << ',' << region_name(r.region) << ',' << (r.oracle_converged ? 1 : 0)
            << '\n';
}

void write_figure2_csv(std::ostream& out, const std::vector<Figure2Record>& rows)
{
    out << "sigma,draw_index,method,highest_k,verdicts\n";
    for (const auto& r : rows)
        out << num(r.sigma) << ',' << r.draw_index << ',' << method_name(r.method) << ',' << r.highest_k << ','
            << r.verdicts << '\n';
}

void write_milestones_csv(std::ostream& out, const MilestoneTable& table)
{
    out << "K,precision,log10_max_summand,log10_abs_C,digits_lost_estimate,digits_lost_measured,correct_sig_figs,"
           "relative_error,first_total_failure\n";
    for (const auto& r : table.rows) {
        const auto& first = r.precision == Precision::binary32 ? table.binary32_first_total_failure
                                                                : table.binary64_first_total_failure;
        out << r.K << ',' << precision_name(r.precision) << ',' << num(r.log10_max_summand) << ','
            << num(r.log10_abs_C) << ',' << num(r.digits_lost_estimate) << ',' << num(r.digits_lost_measured) << ','
            << r.correct_sig_figs << ',' << num(r.relative_error) << ',' << opt(first) << '\n';
    }
}

} // namespace ccnorm
