#ifndef CCNORM_CCNORM_H
#define CCNORM_CCNORM_H

/* Normalizing constant of the continuous categorical distribution.
 *
 * All functions return a ccn_status; on failure, ccn_last_error() describes
 * the most recent error on the calling thread. Handles are opaque and owned
 * by the caller. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CCN_API __declspec(dllexport)
#else
#define CCN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccn_status {
    CCN_OK = 0,
    CCN_DOMAIN_ERROR,
    CCN_DIMENSION_MISMATCH,
    CCN_DEGENERATE_PARAMETERS,
    CCN_OVERFLOW_IN_SUMMAND,
    CCN_PRECISION_EXHAUSTED,
    CCN_UNSUPPORTED_DIMENSION,
    CCN_POLE_HIT,
    CCN_INVERSION_DIVERGED,
    CCN_AMBIGUOUS_TIES,
    CCN_MOMENT_INCONSISTENT,
    CCN_INVALID_ARGUMENT,
    CCN_IO_ERROR,
    CCN_INTERNAL_ERROR
} ccn_status;

typedef enum ccn_method {
    CCN_METHOD_AUTO = 0,
    CCN_METHOD_CLOSED32,
    CCN_METHOD_CLOSED64,
    CCN_METHOD_LOGSUMEXP,
    CCN_METHOD_INDUCTIVE,
    CCN_METHOD_DEHOOG,
    CCN_METHOD_STEHFEST,
    CCN_METHOD_TALBOT,
    CCN_METHOD_ORACLE,
    CCN_METHOD_REPEATED,
    CCN_METHOD_QUADRATURE
} ccn_method;

typedef enum ccn_region { CCN_REGION_GREEN = 0, CCN_REGION_YELLOW, CCN_REGION_RED } ccn_region;

typedef enum ccn_moment_backend { CCN_MOMENT_AD = 0, CCN_MOMENT_FD } ccn_moment_backend;

typedef enum ccn_bench_kind { CCN_BENCH_FIG1 = 0, CCN_BENCH_FIG2, CCN_BENCH_MILESTONES } ccn_bench_kind;

/* Natural parameters (eta_1..eta_{K-1}, implicit eta_K = 0) plus a log-scale
 * shift: C(full vector) = exp(log_shift) * C(eta). */
typedef struct ccn_params ccn_params;

typedef struct ccn_result {
    double value;
    double log_abs;
    int sign;
    ccn_method method;       /* backend that produced the value */
    long precision_bits;     /* 24, 53 or the arbitrary precision used */
    double digits_lost;      /* NaN when not defined (tied parameters) */
} ccn_result;

typedef struct ccn_report {
    double log10_max_abs_summand;
    double log10_abs_result;
    double digits_lost_estimate;
    ccn_region region;
} ccn_report;

typedef struct ccn_eval_options {
    double tie_tol;          /* repeated and auto only; 0 = exact ties */
    int stehfest_n;
    long stehfest_bits;
    int dehoog_m;
    double dehoog_tol;
    int talbot_m;
    double auto_oracle_digits; /* auto switches to the oracle at this many lost digits */
} ccn_eval_options;

typedef struct ccn_bench_config {
    uint64_t seed;
    const double* sigmas;    /* NULL selects the default grid */
    size_t n_sigmas;
    int k_max;
    int draws_per_sigma;
    int sig_figs_required;
    unsigned threads;        /* 0 = hardware concurrency */
} ccn_bench_config;

CCN_API ccn_eval_options ccn_eval_options_default(void);
CCN_API ccn_bench_config ccn_bench_config_default(void);

/* eta has n = K-1 entries. */
CCN_API ccn_status ccn_params_from_eta(const double* eta, size_t n, ccn_params** out);
/* eta_full has K entries; it is normalized by its last entry. */
CCN_API ccn_status ccn_params_from_eta_full(const double* eta_full, size_t k, ccn_params** out);
/* lambda has either K entries summing to 1 or K-1 entries (lambda_K = 1 - sum). */
CCN_API ccn_status ccn_params_from_lambda(const double* lambda, size_t n, ccn_params** out);
CCN_API void ccn_params_free(ccn_params* p);

CCN_API size_t ccn_params_dim(const ccn_params* p);
CCN_API double ccn_params_log_shift(const ccn_params* p);
/* Copies the K-1 natural parameters; cap must be >= K-1. */
CCN_API ccn_status ccn_params_eta(const ccn_params* p, double* out, size_t cap);
/* Copies the K mean parameters (softmax of the full vector); cap must be >= K. */
CCN_API ccn_status ccn_params_lambda(const ccn_params* p, double* out, size_t cap);

/* options may be NULL for defaults. The result includes exp(log_shift). */
CCN_API ccn_status ccn_eval(const ccn_params* p, ccn_method method, const ccn_eval_options* options,
                            ccn_result* out);
CCN_API ccn_status ccn_diagnose(const ccn_params* p, ccn_report* out);

/* E[prod u_i^{orders_i}] under the distribution with the D distinct full-vector
 * parameters `values`. */
CCN_API ccn_status ccn_moment(const double* values, const int* orders, size_t d, ccn_moment_backend backend,
                              double* out);

/* Writes fig1.csv, fig2.csv or milestones.csv into out_dir (created if missing). */
CCN_API ccn_status ccn_bench_run(ccn_bench_kind kind, const ccn_bench_config* config, const char* out_dir);

CCN_API const char* ccn_last_error(void);
CCN_API const char* ccn_status_name(ccn_status status);
CCN_API const char* ccn_method_name(ccn_method method);
CCN_API ccn_status ccn_method_from_name(const char* name, ccn_method* out);
CCN_API const char* ccn_region_name(ccn_region region);

#ifdef __cplusplus
}
#endif

#endif
