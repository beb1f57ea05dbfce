#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hct/types.hpp"

namespace hct {

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

struct LoadPaths {
    std::string ratings; // case_id,rater_id,vote
    std::string machine; // case_id,score
    std::string truth;   // case_id,label
    std::string probabilistic_ratings; // optional: case_id,rater_id,prob
};

struct RejectedCase {
    std::string case_id;
    std::string reason;
};

struct LoadedDataset {
    Dataset dataset;
    std::vector<RejectedCase> rejected; // cases lacking votes, score, or truth
};

// Joins the three files into a validated Dataset. Malformed values raise named
// errors (DuplicateKeyError, ScoreRangeError, LabelValueError, CsvFormatError);
// cases that cannot be joined are reported, not fatal. `seed` drives the random
// assignment of probabilistic forecasts sitting exactly at 50%.
LoadedDataset load_dataset(const LoadPaths& paths, const std::string& name = "dataset",
                           std::uint64_t seed = 0);

// <0.5 -> negative, >0.5 -> positive, exactly 0.5 -> seeded coin flip keyed by
// rater id, so the outcome does not depend on map iteration order.
std::map<std::string, Label> preprocess_probabilistic_votes(
    const std::map<std::string, double>& raw, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Per-case evaluation
// ---------------------------------------------------------------------------

// Per-case means over permutations: correctness, humans consulted, and the
// fraction of permutations deciding positive (feeds TPR/FPR).
struct CaseEval {
    double p_correct = 0.0;
    double cost = 0.0;
    double p_positive = 0.0;
};

// Exact average over all n(n-1) ordered rater pairs with the machine in the
// middle. Computed from vote counts, which is identical to enumerating the
// pairs. Throws ValidationError for fewer than 2 raters.
CaseEval evaluate_hct_on_case(const CaseRecord& rec, const Threshold& threshold);

// Sequential k-person majority over ordered rater permutations: exhaustive when
// the permutation count is at most max_perms, otherwise a seeded sample of
// max_perms distinct ordered permutations. Cost is sequential (2 or 3) for k=3;
// for larger k all k voters are counted. Throws for even k or too few raters.
CaseEval evaluate_majority_on_case(const CaseRecord& rec, int k, int max_perms,
                                   std::uint64_t seed);

// Counting kernel giving O(1) evaluation of any strategy at any threshold.
struct CaseKernel {
    std::string case_id;
    Label truth = Label::negative;
    double machine_score = 0.0;
    int n_raters = 0;
    int n_positive = 0;

    CaseEval hct_if_machine_positive;
    CaseEval hct_if_machine_negative;
    CaseEval single_human;
    CaseEval hierarchy;
    CaseEval polyarchy;

    const CaseEval& hct_at(const Threshold& t) const;
    CaseEval machine_at(const Threshold& t) const; // 0/1 outcome, cost 0
};

CaseKernel build_case_kernel(const CaseRecord& rec); // requires >= 2 raters

struct SkippedCase {
    std::string case_id;
    std::string reason;
};

struct KernelTable {
    std::vector<CaseKernel> kernels;
    std::vector<SkippedCase> skipped;
};

KernelTable build_kernels(const Dataset& ds);

// ---------------------------------------------------------------------------
// Threshold sweep
// ---------------------------------------------------------------------------

struct StrategyOutcome {
    double accuracy = 0.0;
    double cost = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
};

struct SweepRow {
    Threshold threshold;
    StrategyOutcome hct;
    StrategyOutcome majority;
    StrategyOutcome machine;
    StrategyOutcome single_human;
    StrategyOutcome hierarchy;
    StrategyOutcome polyarchy;
};

struct SweepOptions {
    int k_majority = 3;
    int max_perms = 25000;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct SweepReport {
    std::vector<SweepRow> rows; // one per candidate threshold, ascending
    std::vector<SkippedCase> skipped_pairs;    // < 2 raters
    std::vector<SkippedCase> skipped_majority; // < k raters
    std::size_t n_cases_pairs = 0;
    std::size_t n_cases_majority = 0;
};

// Sentinels plus one interior threshold per distinct machine score, ascending.
std::vector<Threshold> candidate_thresholds(const Dataset& ds);

SweepReport sweep(const Dataset& ds, const SweepOptions& opts = {});

// Per-case outcomes of every strategy at one threshold, restricted to cases
// eligible for both the pairs path and the majority path so that paired
// comparisons see a common case set.
struct PerCaseTable {
    Threshold threshold;
    std::vector<std::string> case_ids;
    std::map<std::string, Label> truth;
    std::map<std::string, CaseEval> hct, majority, machine, single_human, hierarchy, polyarchy;
};

PerCaseTable per_case_outcomes(const Dataset& ds, const Threshold& threshold,
                               const SweepOptions& opts = {});

// ---------------------------------------------------------------------------
// Rates and curves
// ---------------------------------------------------------------------------

// Fractional per-case positive decisions contribute fractionally. Throws
// UndefinedRateError when the truth set lacks positives or negatives.
std::pair<double, double> confusion_rates(const std::map<std::string, double>& positive_fraction,
                                          const std::map<std::string, Label>& truth);

// Binormal single-operating-point AUC with inputs clamped to [1e-9, 1-1e-9].
double single_point_auc(double tpr, double fpr);

struct CrowdPoint {
    int size = 0;
    double accuracy = 0.0;
    double cost = 0.0;
    bool sequential_cost = false; // true only for size 3
    std::size_t n_cases = 0;
    std::size_t n_skipped = 0;
};

// Majority accuracy for increasing odd group sizes.
std::vector<CrowdPoint> crowd_curve(const Dataset& ds, const std::vector<int>& sizes,
                                    const SweepOptions& opts = {});

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void write_sweep_csv(const SweepReport& report, std::ostream& out);
void write_roc_csv(const SweepReport& report, std::ostream& out);
void write_crowd_csv(const std::vector<CrowdPoint>& curve, std::ostream& out);
void write_per_case_jsonl(const PerCaseTable& table, std::ostream& out);

// ratings.csv / machine.csv / truth.csv under dir, matching the loader schema.
void write_dataset_csvs(const Dataset& ds, const std::string& dir);

} // namespace hct
