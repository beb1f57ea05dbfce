#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hct/reanalysis.hpp"
#include "hct/types.hpp"

namespace hct {

struct CvConfig {
    int n_repeats = 1000;
    int n_folds = 5;
    std::uint64_t seed = 0;
    int threads = 1;
    SweepOptions sweep; // majority size, permutation cap, per-case sampling seed
};

// Partitions case ids into n_folds folds, preserving the base rate: each fold's
// positive count differs from the proportional share by less than one case.
// Throws StratificationError when either class has fewer cases than folds.
std::vector<std::vector<std::string>> stratified_folds(const Dataset& ds, int n_folds,
                                                       std::uint64_t seed);

// Accuracy-maximizing threshold of the tree; ties break to the smallest
// threshold in the sentinel-aware total order.
Threshold select_threshold(const std::vector<SweepRow>& train_sweep);

struct CvRow {
    int repeat = 0;
    int fold = 0;
    std::string strategy; // hct | majority | machine | single_human
    double accuracy = 0.0;
};

struct CvResult {
    std::vector<CvRow> rows; // n_repeats * n_folds * 4, deterministic order
    // Mean test accuracy per strategy, for quick reporting.
    std::map<std::string, double> mean_accuracy;
};

// For each repeat: restratify, sweep each training set (thresholds recomputed
// from training scores only), select the threshold, and evaluate the held-out
// fold. Repeats are independent and parallelize without changing results.
CvResult repeated_cv(const Dataset& ds, const CvConfig& cfg);

// Threshold the CV procedure selects when training on exactly these cases.
// Exposed so leakage checks can perturb held-out cases and observe stability.
Threshold cv_select_threshold(const Dataset& ds, const std::vector<std::string>& train_case_ids);

struct BootstrapSummary {
    double median_diff = 0.0;
    double hdi_low = 0.0;
    double hdi_high = 0.0;
    double prob_direction = 0.0;   // fraction of resampled diffs > 0
    double prob_beyond_rope = 0.0; // fraction of resampled diffs > rope half-width
    double rope_halfwidth = 0.01;
    int n_boot = 0;
};

// Paired cluster bootstrap of mean(a) - mean(b): clusters (keys) are resampled
// with replacement and applied to both maps. The HDI is the shortest interval
// holding 95% of resampled differences. Keys must match exactly; n_boot < 100
// is rejected.
BootstrapSummary cluster_bootstrap_diff(const std::map<std::string, double>& per_case_a,
                                        const std::map<std::string, double>& per_case_b,
                                        int n_boot = 10000, double rope = 0.01,
                                        std::uint64_t seed = 0, int threads = 1);

void write_cv_csv(const CvResult& result, std::ostream& out);

struct NamedBootstrap {
    std::string comparison;
    BootstrapSummary summary;
};

// CSV columns: comparison,median_diff,hdi_low,hdi_high,prob_direction,prob_beyond_rope
void write_bootstrap_csv(const std::vector<NamedBootstrap>& summaries, std::ostream& out);

} // namespace hct
