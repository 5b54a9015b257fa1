#include "ccnorm/ccnorm.h"

#include "bench.hpp"
#include "closed_form.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "repeated.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

struct ccn_params {
    ccnorm::NaturalParams eta;
    double log_shift;
};

namespace {

using namespace ccnorm;

thread_local std::string last_error;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ccn_status to_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::domain: return CCN_DOMAIN_ERROR;
    case ErrorCode::dimension_mismatch: return CCN_DIMENSION_MISMATCH;
    case ErrorCode::degenerate_parameters: return CCN_DEGENERATE_PARAMETERS;
    case ErrorCode::overflow_in_summand: return CCN_OVERFLOW_IN_SUMMAND;
    case ErrorCode::precision_exhausted: return CCN_PRECISION_EXHAUSTED;
    case ErrorCode::unsupported_dimension: return CCN_UNSUPPORTED_DIMENSION;
    case ErrorCode::pole_hit: return CCN_POLE_HIT;
    case ErrorCode::inversion_diverged: return CCN_INVERSION_DIVERGED;
    case ErrorCode::ambiguous_ties: return CCN_AMBIGUOUS_TIES;
    case ErrorCode::moment_inconsistent: return CCN_MOMENT_INCONSISTENT;
    case ErrorCode::invalid_argument: return CCN_INVALID_ARGUMENT;
    }
    return CCN_INTERNAL_ERROR;
}

ccn_status report(ccn_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
ccn_status guarded(F&& body) noexcept
{
    try {
        last_error.clear();
        body();
        return CCN_OK;
    } catch (const Error& e) {
        return report(to_status(e.code()), e.what());
    } catch (const io_error& e) {
        return report(CCN_IO_ERROR, e.what());
    } catch (const std::bad_alloc&) {
        return report(CCN_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return report(CCN_INTERNAL_ERROR, e.what());
    } catch (...) {
        return report(CCN_INTERNAL_ERROR, "unknown error");
    }
}

void require(bool ok, const char* what)
{
    if (!ok)
        fail(ErrorCode::invalid_argument, what);
}

constexpr Method core_methods[] = {Method::closed_binary32, Method::closed_binary64, Method::logsumexp,
                                   Method::inductive,       Method::dehoog,          Method::stehfest,
                                   Method::talbot,          Method::oracle,          Method::repeated,
                                   Method::quadrature};

Method to_core(ccn_method m)
{
    require(m > CCN_METHOD_AUTO && m <= CCN_METHOD_QUADRATURE, "unknown method");
    return core_methods[m - 1];
}

ccn_method from_core(Method m)
{
    const auto it = std::find(std::begin(core_methods), std::end(core_methods), m);
    return static_cast<ccn_method>(it - std::begin(core_methods) + 1);
}

// Entries within tie_tol of each other (exact equality at 0).
bool has_tie(const NaturalParams& eta, double tie_tol)
{
    auto full = eta.full();
    std::sort(full.begin(), full.end());
    for (std::size_t i = 1; i < full.size(); ++i)
        if (full[i] - full[i - 1] <= tie_tol)
            return true;
    return false;
}

EvalOptions to_core(const ccn_eval_options& o)
{
    EvalOptions opt;
    opt.tie_tol = o.tie_tol;
    opt.inversion.stehfest_N = o.stehfest_n;
    opt.inversion.stehfest_bits = o.stehfest_bits;
    opt.inversion.dehoog_M = o.dehoog_m;
    opt.inversion.dehoog_tol = o.dehoog_tol;
    opt.inversion.talbot_M = o.talbot_m;
    opt.inversion.validate();
    return opt;
}

ccn_params* make_handle(NaturalParams eta, double shift)
{
    return new ccn_params{std::move(eta), shift};
}

} // namespace

extern "C" {

ccn_eval_options ccn_eval_options_default(void)
{
    const InversionSettings s;
    return {0.0, s.stehfest_N, s.stehfest_bits, s.dehoog_M, s.dehoog_tol, s.talbot_M, 6.0};
}

ccn_bench_config ccn_bench_config_default(void)
{
    const ExperimentConfig c;
    return {c.seed, nullptr, 0, c.k_max, c.draws_per_sigma, c.sig_figs_required, c.threads};
}

ccn_status ccn_params_from_eta(const double* eta, size_t n, ccn_params** out)
{
    return guarded([&] {
        require(out != nullptr, "null output handle");
        require(eta != nullptr || n == 0, "null eta");
        *out = make_handle(NaturalParams(std::vector<double>(eta, eta + n)), 0.0);
    });
}

ccn_status ccn_params_from_eta_full(const double* eta_full, size_t k, ccn_params** out)
{
    return guarded([&] {
        require(out != nullptr, "null output handle");
        require(eta_full != nullptr && k >= 2, "eta_full needs at least two entries");
        for (size_t i = 0; i < k; ++i)
            if (!std::isfinite(eta_full[i]))
                fail(ErrorCode::domain, "eta_full has a non-finite entry");
        auto n = NaturalParams::from_full(std::span<const double>(eta_full, k));
        *out = make_handle(std::move(n.params), n.shift);
    });
}

ccn_status ccn_params_from_lambda(const double* lambda, size_t n, ccn_params** out)
{
    return guarded([&] {
        require(out != nullptr, "null output handle");
        require(lambda != nullptr && n >= 1, "lambda needs at least one entry");
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i)
            sum += lambda[i];
        // K entries summing to one, otherwise the K-1 leading entries.
        const bool full = n >= 2 && std::fabs(sum - 1.0) <= 1e-9;
        const size_t lead = full ? n - 1 : n;
        const MeanParams mean(SimplexPoint(std::vector<double>(lambda, lambda + lead)));
        *out = make_handle(lambda_to_eta(mean), 0.0);
    });
}

void ccn_params_free(ccn_params* p)
{
    delete p;
}

size_t ccn_params_dim(const ccn_params* p)
{
    return p ? p->eta.dim() : 0;
}

double ccn_params_log_shift(const ccn_params* p)
{
    return p ? p->log_shift : 0.0;
}

ccn_status ccn_params_eta(const ccn_params* p, double* out, size_t cap)
{
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        const auto eta = p->eta.eta();
        if (cap < eta.size())
            fail(ErrorCode::dimension_mismatch, "output buffer holds fewer than K-1 entries");
        std::copy(eta.begin(), eta.end(), out);
    });
}

ccn_status ccn_params_lambda(const ccn_params* p, double* out, size_t cap)
{
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        const auto lambda = eta_to_lambda(p->eta).full();
        if (cap < lambda.size())
            fail(ErrorCode::dimension_mismatch, "output buffer holds fewer than K entries");
        std::copy(lambda.begin(), lambda.end(), out);
    });
}

ccn_status ccn_eval(const ccn_params* p, ccn_method method, const ccn_eval_options* options, ccn_result* out)
{
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        const ccn_eval_options o = options ? *options : ccn_eval_options_default();
        const EvalOptions opt = to_core(o);
        const bool tied = has_tie(p->eta, o.tie_tol);

        std::optional<CancellationReport> diag;
        if (!tied) {
            try {
                diag = cancellation_diagnostics(p->eta);
            } catch (const PrecisionExhaustedError&) {
                // Only auto needs the estimate; other methods still run.
                if (method == CCN_METHOD_AUTO)
                    throw;
            }
        }

        EvalResult r;
        if (method == CCN_METHOD_AUTO) {
            if (tied)
                r = evaluate(p->eta, Method::repeated, opt);
            else if (diag->digits_lost_estimate >= o.auto_oracle_digits)
                r = evaluate(p->eta, Method::oracle, opt);
            else
                r = evaluate(p->eta, Method::closed_binary64, opt);
        } else {
            r = evaluate(p->eta, to_core(method), opt);
        }
        r = r.scaled_by_exp(p->log_shift);
        *out = {r.value, r.log_abs, r.sign, from_core(r.method), r.precision.bits,
                diag ? diag->digits_lost_estimate : std::nan("")};
    });
}

ccn_status ccn_diagnose(const ccn_params* p, ccn_report* out)
{
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        const CancellationReport r = cancellation_diagnostics(p->eta);
        // Report magnitudes for the full vector as given.
        const double shift10 = p->log_shift / std::log(10.0);
        *out = {r.log10_max_abs_summand + shift10, r.log10_abs_result + shift10, r.digits_lost_estimate,
                static_cast<ccn_region>(r.region)};
    });
}

ccn_status ccn_moment(const double* values, const int* orders, size_t d, ccn_moment_backend backend, double* out)
{
    return guarded([&] {
        require(values != nullptr && orders != nullptr && out != nullptr, "null argument");
        require(backend == CCN_MOMENT_AD || backend == CCN_MOMENT_FD, "unknown moment backend");
        MomentIndex idx{std::vector<int>(orders, orders + d)};
        *out = cc_moment(std::span<const double>(values, d), idx,
                         backend == CCN_MOMENT_AD ? MomentBackend::closed_form_ad : MomentBackend::oracle_fd);
    });
}

ccn_status ccn_bench_run(ccn_bench_kind kind, const ccn_bench_config* config, const char* out_dir)
{
    return guarded([&] {
        require(out_dir != nullptr, "null output directory");
        const ccn_bench_config c = config ? *config : ccn_bench_config_default();
        ExperimentConfig cfg;
        cfg.seed = c.seed;
        if (c.sigmas != nullptr)
            cfg.sigmas.assign(c.sigmas, c.sigmas + c.n_sigmas);
        cfg.k_max = c.k_max;
        cfg.draws_per_sigma = c.draws_per_sigma;
        cfg.sig_figs_required = c.sig_figs_required;
        cfg.threads = c.threads;

        const std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw io_error("cannot create " + dir.string() + ": " + ec.message());

        const char* names[] = {"fig1.csv", "fig2.csv", "milestones.csv"};
        require(kind >= CCN_BENCH_FIG1 && kind <= CCN_BENCH_MILESTONES, "unknown bench kind");
        const auto path = dir / names[kind];
        std::ofstream file(path, std::ios::binary);
        if (!file)
            throw io_error("cannot open " + path.string());
        switch (kind) {
        case CCN_BENCH_FIG1: write_figure1_csv(file, run_figure1(cfg)); break;
        case CCN_BENCH_FIG2: write_figure2_csv(file, run_figure2(cfg)); break;
        case CCN_BENCH_MILESTONES: write_milestones_csv(file, digit_loss_milestones()); break;
        }
        if (!file.flush())
            throw io_error("cannot write " + path.string());
    });
}

const char* ccn_last_error(void)
{
    return last_error.c_str();
}

const char* ccn_status_name(ccn_status status)
{
    switch (status) {
    case CCN_OK: return "Ok";
    case CCN_DOMAIN_ERROR: return "DomainError";
    case CCN_DIMENSION_MISMATCH: return "DimensionMismatch";
    case CCN_DEGENERATE_PARAMETERS: return "DegenerateParameters";
    case CCN_OVERFLOW_IN_SUMMAND: return "OverflowInSummand";
    case CCN_PRECISION_EXHAUSTED: return "PrecisionExhausted";
    case CCN_UNSUPPORTED_DIMENSION: return "UnsupportedDimension";
    case CCN_POLE_HIT: return "PoleHit";
    case CCN_INVERSION_DIVERGED: return "InversionDiverged";
    case CCN_AMBIGUOUS_TIES: return "AmbiguousTies";
    case CCN_MOMENT_INCONSISTENT: return "MomentInconsistent";
    case CCN_INVALID_ARGUMENT: return "InvalidArgument";
    case CCN_IO_ERROR: return "IoError";
    case CCN_INTERNAL_ERROR: return "InternalError";
    }
    return "UnknownStatus";
}

const char* ccn_method_name(ccn_method method)
{
    if (method == CCN_METHOD_AUTO)
        return "auto";
    if (method < CCN_METHOD_AUTO || method > CCN_METHOD_QUADRATURE)
        return "unknown";
    return method_name(core_methods[method - 1]).data();
}

ccn_status ccn_method_from_name(const char* name, ccn_method* out)
{
    if (name == nullptr || out == nullptr)
        return report(CCN_INVALID_ARGUMENT, "null argument");
    for (int m = CCN_METHOD_AUTO; m <= CCN_METHOD_QUADRATURE; ++m)
        if (std::strcmp(name, ccn_method_name(static_cast<ccn_method>(m))) == 0) {
            *out = static_cast<ccn_method>(m);
            return CCN_OK;
        }
    return report(CCN_INVALID_ARGUMENT, std::string("unknown method '") + name + "'");
}

const char* ccn_region_name(ccn_region region)
{
    if (region < CCN_REGION_GREEN || region > CCN_REGION_RED)
        return "unknown";
    return region_name(static_cast<Region>(region)).data();
}

} // extern "C"
