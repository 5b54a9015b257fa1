#pragma once

#include "params.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ccnorm {

std::vector<double> default_sigmas();

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::vector<double> sigmas = default_sigmas();
    int k_max = 40;
    int draws_per_sigma = 10;
    std::vector<Method> methods{Method::closed_binary32, Method::closed_binary64, Method::dehoog, Method::stehfest};
    int sig_figs_required = 3;
    /// Worker threads; 0 uses the hardware concurrency. Output does not depend on it.
    unsigned threads = 0;

    void validate() const;
};

struct Figure1Record {
    double sigma;
    int draw_index;
    int K;
    double log10_abs_C;
    double log10_max_summand;
    Region region;
    bool oracle_converged;
};

struct Figure2Record {
    double sigma;
    int draw_index;
    Method method;
    int highest_k;
    /// verdicts[j] is the agreement verdict at K = j + 2.
    std::string verdicts;
};

struct MilestoneRecord {
    int K;
    Precision precision;
    double log10_max_summand;
    double log10_abs_C;
    double digits_lost_estimate;
    double digits_lost_measured;
    int correct_sig_figs;
    double relative_error;
};

struct MilestoneTable {
    std::vector<MilestoneRecord> rows;
    /// First K (scanning upward from 2) at which no significant figure is correct.
    std::optional<int> binary32_first_total_failure;
    std::optional<int> binary64_first_total_failure;
};

/// Standard-normal draws for K = 3..k_max, one oracle run per record.
std::vector<Figure1Record> run_figure1(const ExperimentConfig& cfg);

/// Per (sigma, draw, method): the first K that fails to match the oracle,
/// minus one, clamped to [2, k_max]. Raw per-K verdicts are kept.
std::vector<Figure2Record> run_figure2(const ExperimentConfig& cfg);

/// eta = (1, ..., K-1) for K in ks, plus a scan for the first total failure
/// in each precision up to scan_limit.
MilestoneTable digit_loss_milestones(const std::vector<int>& ks = {5, 10, 15, 20, 25, 40, 50}, int scan_limit = 60);

/// The first K in [2, limit] where the closed form in `precision` has zero
/// correct significant figures on eta = (1, ..., K-1).
std::optional<int> first_total_failure(Precision precision, int limit);

/// Frontier from verdicts (index j is K = j + 2).
int frontier_from_verdicts(const std::string& verdicts, int k_max);

void write_figure1_csv(std::ostream& out, const std::vector<Figure1Record>& rows);
void write_figure2_csv(std::ostream& out, const std::vector<Figure2Record>& rows);
void write_milestones_csv(std::ostream& out, const MilestoneTable& table);

} // namespace ccnorm
