#include "ccnorm/ccnorm.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_compute = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComputeError {
    ccn_status status;
};

void check(ccn_status s)
{
    if (s != CCN_OK)
        throw ComputeError{s};
}

struct ParamsHandle {
    ccn_params* p = nullptr;
    ParamsHandle() = default;
    ParamsHandle(const ParamsHandle&) = delete;
    ParamsHandle& operator=(const ParamsHandle&) = delete;
    ~ParamsHandle() { ccn_params_free(p); }
};

// --params takes a path, "-" for stdin, or inline JSON.
json read_params(const std::string& source)
{
    std::string text;
    if (source == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!source.empty() && source.front() == '{') {
        text = source;
    } else {
        std::ifstream in(source);
        if (!in)
            throw UsageError("cannot read params file '" + source + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw UsageError("params must be a JSON object");
    return j;
}

std::vector<double> number_list(const json& j, const std::string& key)
{
    if (!j.is_array())
        throw UsageError("'" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number())
            throw UsageError("'" + key + "' must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// Exactly one of eta, eta_full, lambda.
std::string params_key(const json& j)
{
    std::string found;
    for (const char* key : {"eta", "eta_full", "lambda"}) {
        if (!j.contains(key))
            continue;
        if (!found.empty())
            throw UsageError("params give both '" + found + "' and '" + key + "'");
        found = key;
    }
    if (found.empty())
        throw UsageError("params need one of 'eta', 'eta_full' or 'lambda'");
    for (const auto& item : j.items())
        if (item.key() != found)
            throw UsageError("unknown params key '" + item.key() + "'");
    return found;
}

void load(const json& j, ParamsHandle& h)
{
    const std::string key = params_key(j);
    const auto v = number_list(j[key], key);
    if (key == "eta")
        check(ccn_params_from_eta(v.data(), v.size(), &h.p));
    else if (key == "eta_full")
        check(ccn_params_from_eta_full(v.data(), v.size(), &h.p));
    else
        check(ccn_params_from_lambda(v.data(), v.size(), &h.p));
}

json finite_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

double round_sig(double x, int digits)
{
    if (!std::isfinite(x) || x == 0.0)
        return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw UsageError(std::string("bad number '") + item + "' in " + what);
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError(std::string(what) + " is empty");
    return out;
}

void print(const json& j)
{
    std::cout << j.dump() << '\n';
}

int run_eval(const std::string& source, const std::string& method_name, int sig_figs, std::optional<double> tie_tol)
{
    ccn_method method{};
    if (ccn_method_from_name(method_name.c_str(), &method) != CCN_OK)
        throw UsageError("unknown method '" + method_name + "'");
    if (tie_tol && method != CCN_METHOD_REPEATED && method != CCN_METHOD_AUTO)
        throw UsageError("--tie-tol only applies to --method repeated or auto");

    ParamsHandle h;
    load(read_params(source), h);
    ccn_eval_options opt = ccn_eval_options_default();
    if (tie_tol)
        opt.tie_tol = *tie_tol;
    ccn_result r{};
    check(ccn_eval(h.p, method, &opt, &r));
    print({{"value", finite_or_null(round_sig(r.value, sig_figs))},
           {"log_abs", finite_or_null(r.log_abs)},
           {"sign", r.sign},
           {"method", ccn_method_name(r.method)},
           {"precision_bits", r.precision_bits},
           {"digits_lost", finite_or_null(r.digits_lost)}});
    return 0;
}

int run_diag(const std::string& source)
{
    ParamsHandle h;
    load(read_params(source), h);
    ccn_report r{};
    check(ccn_diagnose(h.p, &r));
    print({{"log10_max_abs_summand", finite_or_null(r.log10_max_abs_summand)},
           {"log10_abs_result", finite_or_null(r.log10_abs_result)},
           {"digits_lost_estimate", finite_or_null(r.digits_lost_estimate)},
           {"region", ccn_region_name(r.region)}});
    return 0;
}

int run_moments(const std::string& values_text, const std::string& orders_text, const std::string& backend)
{
    const auto values = parse_list(values_text, "--values");
    std::vector<int> orders;
    for (double o : parse_list(orders_text, "--orders")) {
        if (o != std::floor(o) || o < 0 || o > 1000)
            throw UsageError("--orders must be nonnegative integers");
        orders.push_back(static_cast<int>(o));
    }
    if (orders.size() != values.size())
        throw UsageError("--values and --orders differ in length");
    double m = 0.0;
    check(ccn_moment(values.data(), orders.data(), values.size(), backend == "ad" ? CCN_MOMENT_AD : CCN_MOMENT_FD,
                     &m));
    print({{"value", finite_or_null(m)}, {"backend", backend}});
    return 0;
}

struct BenchArgs {
    std::string kind;
    std::uint64_t seed = 0;
    std::string out;
    std::optional<int> k_max;
    std::optional<int> draws;
    std::optional<std::string> sigmas;
    unsigned threads = 0;
};

int run_bench(const BenchArgs& a)
{
    ccn_bench_kind kind = a.kind == "fig1" ? CCN_BENCH_FIG1 : a.kind == "fig2" ? CCN_BENCH_FIG2 : CCN_BENCH_MILESTONES;
    if (kind == CCN_BENCH_MILESTONES && (a.k_max || a.draws || a.sigmas))
        throw UsageError("milestones takes no --k-max, --draws or --sigmas");
    if (kind == CCN_BENCH_FIG1 && a.sigmas)
        throw UsageError("fig1 draws standard normals; --sigmas does not apply");

    ccn_bench_config cfg = ccn_bench_config_default();
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    if (a.k_max)
        cfg.k_max = *a.k_max;
    if (a.draws)
        cfg.draws_per_sigma = *a.draws;
    std::vector<double> sigmas;
    if (a.sigmas) {
        sigmas = parse_list(*a.sigmas, "--sigmas");
        cfg.sigmas = sigmas.data();
        cfg.n_sigmas = sigmas.size();
    }
    check(ccn_bench_run(kind, &cfg, a.out.c_str()));
    std::cerr << "wrote " << a.kind << " results to " << a.out << '\n';
    return 0;
}

int run_convert(const std::string& from, const std::string& source)
{
    const json j = read_params(source);
    const std::string key = params_key(j);
    const bool key_is_eta = key == "eta" || key == "eta_full";
    if ((from == "eta") != key_is_eta)
        throw UsageError("--from " + from + " does not match params key '" + key + "'");

    ParamsHandle h;
    load(j, h);
    const std::size_t K = ccn_params_dim(h.p);
    if (from == "lambda") {
        std::vector<double> eta(K - 1);
        check(ccn_params_eta(h.p, eta.data(), eta.size()));
        print({{"eta", eta}});
    } else {
        std::vector<double> lambda(K);
        check(ccn_params_lambda(h.p, lambda.data(), lambda.size()));
        print({{"lambda", lambda}});
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Normalizing constant of the continuous categorical distribution"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all");

    std::string params;
    std::string method = "auto";
    int sig_figs = 17;
    std::optional<double> tie_tol;

    auto* eval = app.add_subcommand("eval", "Evaluate C(eta)");
    eval->add_option("--params", params, "JSON file, '-' for stdin, or inline JSON")->required();
    eval->add_option("--method", method, "closed32|closed64|logsumexp|inductive|dehoog|stehfest|talbot|oracle|"
                                         "repeated|quadrature|auto");
    eval->add_option("--sig-figs", sig_figs, "Significant figures printed for value")->check(CLI::Range(1, 17));
    eval->add_option("--tie-tol", tie_tol, "Tie tolerance for the repeated method")->check(CLI::NonNegativeNumber);

    auto* diag = app.add_subcommand("diag", "Cancellation diagnostics");
    diag->add_option("--params", params, "JSON file, '-' for stdin, or inline JSON")->required();

    std::string values, orders, backend = "ad";
    auto* moments = app.add_subcommand("moments", "Moments E[prod u_i^a_i]");
    moments->add_option("--values", values, "Comma-separated distinct full-vector parameters")->required();
    moments->add_option("--orders", orders, "Comma-separated moment orders")->required();
    moments->add_option("--backend", backend, "ad|fd")->check(CLI::IsMember({"ad", "fd"}));

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run an experiment and write CSV");
    bench->add_option("kind", bench_args.kind, "fig1|fig2|milestones")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "milestones"}));
    bench->add_option("--seed", bench_args.seed, "Random seed")->required();
    bench->add_option("--out", bench_args.out, "Output directory")->required();
    bench->add_option("--k-max", bench_args.k_max, "Largest dimension")->check(CLI::Range(3, 200));
    bench->add_option("--draws", bench_args.draws, "Draws per sigma")->check(CLI::Range(1, 100000));
    bench->add_option("--sigmas", bench_args.sigmas, "Comma-separated sigma grid");
    bench->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)");

    std::string from;
    auto* convert = app.add_subcommand("convert", "Convert between lambda and eta");
    convert->add_option("--from", from, "lambda|eta")->required()->check(CLI::IsMember({"lambda", "eta"}));
    convert->add_option("--params", params, "JSON file, '-' for stdin, or inline JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*eval)
            return run_eval(params, method, sig_figs, tie_tol);
        if (*diag)
            return run_diag(params);
        if (*moments)
            return run_moments(values, orders, backend);
        if (*bench)
            return run_bench(bench_args);
        return run_convert(from, params);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ComputeError& e) {
        std::cerr << ccn_status_name(e.status) << ": " << ccn_last_error() << '\n';
        return exit_compute;
    }
}
