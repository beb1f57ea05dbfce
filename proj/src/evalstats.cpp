#include "hct/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "hct/csv.hpp"
#include "hct/parallel.hpp"
#include "hct/rng.hpp"

namespace hct {

std::vector<std::vector<std::string>> stratified_folds(const Dataset& ds, int n_folds,
                                                       std::uint64_t seed) {
    if (n_folds < 2) {
        throw ValidationError("n_folds must be at least 2, got " + std::to_string(n_folds));
    }
    std::vector<std::string> positives, negatives;
    for (const auto& rec : ds.cases) {
        (rec.truth == Label::positive ? positives : negatives).push_back(rec.case_id);
    }
    if (static_cast<int>(positives.size()) < n_folds ||
        static_cast<int>(negatives.size()) < n_folds) {
        throw StratificationError("stratified folds need at least " + std::to_string(n_folds) +
                                  " cases per class; have " + std::to_string(positives.size()) +
                                  " positives and " + std::to_string(negatives.size()) +
                                  " negatives");
    }

    std::vector<std::vector<std::string>> folds(n_folds);
    auto deal = [&](std::vector<std::string>& ids, std::uint64_t stream) {
        RngStream rng(seed, stream);
        for (std::size_t i = ids.size(); i > 1; --i) {
            std::swap(ids[i - 1], ids[rng.next_below(i)]);
        }
        // Round-robin from a random offset so the fold picking up the remainder
        // varies across repeats.
        const std::size_t offset = rng.next_below(static_cast<std::uint64_t>(n_folds));
        for (std::size_t i = 0; i < ids.size(); ++i) {
            folds[(offset + i) % n_folds].push_back(std::move(ids[i]));
        }
    };
    deal(positives, fnv1a64("positives"));
    deal(negatives, fnv1a64("negatives"));
    return folds;
}

Threshold select_threshold(const std::vector<SweepRow>& train_sweep) {
    if (train_sweep.empty()) {
        throw ValidationError("select_threshold: empty sweep");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < train_sweep.size(); ++i) {
        const bool better = train_sweep[i].hct.accuracy > train_sweep[best].hct.accuracy;
        const bool tie_smaller = train_sweep[i].hct.accuracy == train_sweep[best].hct.accuracy &&
                                 train_sweep[i].threshold < train_sweep[best].threshold;
        if (better || tie_smaller) best = i;
    }
    return train_sweep[best].threshold;
}

namespace {

// Candidate thresholds from a set of kernels (training scores only), ascending.
std::vector<Threshold> thresholds_from_kernels(const std::vector<const CaseKernel*>& kernels) {
    std::vector<double> scores;
    scores.reserve(kernels.size());
    for (const auto* k : kernels) scores.push_back(k->machine_score);
    std::sort(scores.begin(), scores.end());
    scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
    std::vector<Threshold> out;
    out.reserve(scores.size() + 2);
    out.push_back(Threshold::all_positive());
    for (double s : scores) out.push_back(Threshold::interior(s));
    out.push_back(Threshold::all_negative());
    return out;
}

// Argmax of mean tree accuracy, first (smallest) threshold winning ties.
Threshold select_from_kernels(const std::vector<const CaseKernel*>& train) {
    const std::vector<Threshold> thresholds = thresholds_from_kernels(train);
    Threshold best = thresholds.front();
    double best_acc = -1.0;
    for (const auto& t : thresholds) {
        double acc = 0.0;
        for (const auto* k : train) acc += k->hct_at(t).p_correct;
        if (acc > best_acc) {
            best_acc = acc;
            best = t;
        }
    }
    return best;
}

struct CvCaseData {
    std::vector<CaseKernel> kernels;          // jointly eligible cases
    std::map<std::string, std::size_t> index; // case_id -> kernel slot
    std::vector<double> majority_accuracy;    // aligned with kernels
    Dataset eligible;                         // filtered copy for stratification
};

CvCaseData prepare_cv_cases(const Dataset& ds, const CvConfig& cfg) {
    CvCaseData data;
    const int min_raters = std::max(2, cfg.sweep.k_majority);
    for (const auto& rec : ds.cases) {
        if (static_cast<int>(rec.n_raters()) < min_raters) continue;
        data.index.emplace(rec.case_id, data.kernels.size());
        data.kernels.push_back(build_case_kernel(rec));
        data.eligible.cases.push_back(rec);
    }
    data.eligible.name = ds.name;
    if (data.kernels.empty()) {
        throw ValidationError("no case is eligible for cross-validation");
    }
    data.majority_accuracy.resize(data.kernels.size());
    parallel_for(data.kernels.size(), cfg.threads, [&](std::size_t i) {
        data.majority_accuracy[i] = evaluate_majority_on_case(data.eligible.cases[i],
                                                              cfg.sweep.k_majority,
                                                              cfg.sweep.max_perms,
                                                              cfg.sweep.seed)
                                        .p_correct;
    });
    return data;
}

} // namespace

CvResult repeated_cv(const Dataset& ds, const CvConfig& cfg) {
    if (cfg.n_repeats < 1) {
        throw ValidationError("n_repeats must be at least 1");
    }
    const CvCaseData data = prepare_cv_cases(ds, cfg);

    struct FoldRows {
        std::vector<CvRow> rows;
    };
    std::vector<FoldRows> per_repeat(static_cast<std::size_t>(cfg.n_repeats));

    parallel_for(static_cast<std::size_t>(cfg.n_repeats), cfg.threads, [&](std::size_t r) {
        const auto folds =
            stratified_folds(data.eligible, cfg.n_folds, mix64(cfg.seed ^ (r + 1)));
        auto& rows = per_repeat[r].rows;
        for (int f = 0; f < cfg.n_folds; ++f) {
            std::set<std::string> test_ids(folds[f].begin(), folds[f].end());
            std::vector<const CaseKernel*> train;
            std::vector<std::size_t> test;
            for (std::size_t i = 0; i < data.kernels.size(); ++i) {
                if (test_ids.count(data.kernels[i].case_id)) {
                    test.push_back(i);
                } else {
                    train.push_back(&data.kernels[i]);
                }
            }
            const Threshold selected = select_from_kernels(train);

            double hct = 0.0, machine = 0.0, majority = 0.0, single = 0.0;
            for (std::size_t i : test) {
                const CaseKernel& k = data.kernels[i];
                hct += k.hct_at(selected).p_correct;
                machine += k.machine_at(selected).p_correct;
                majority += data.majority_accuracy[i];
                single += k.single_human.p_correct;
            }
            const double n = static_cast<double>(test.size());
            const int repeat_no = static_cast<int>(r);
            rows.push_back({repeat_no, f, "hct", hct / n});
            rows.push_back({repeat_no, f, "majority", majority / n});
            rows.push_back({repeat_no, f, "machine", machine / n});
            rows.push_back({repeat_no, f, "single_human", single / n});
        }
    });

    CvResult result;
    std::map<std::string, std::pair<double, long long>> acc;
    for (const auto& rep : per_repeat) {
        for (const auto& row : rep.rows) {
            result.rows.push_back(row);
            auto& [sum, count] = acc[row.strategy];
            sum += row.accuracy;
            ++count;
        }
    }
    for (const auto& [strategy, pair] : acc) {
        result.mean_accuracy[strategy] = pair.first / static_cast<double>(pair.second);
    }
    return result;
}

Threshold cv_select_threshold(const Dataset& ds, const std::vector<std::string>& train_case_ids) {
    std::set<std::string> wanted(train_case_ids.begin(), train_case_ids.end());
    std::vector<CaseKernel> kernels;
    for (const auto& rec : ds.cases) {
        if (wanted.count(rec.case_id) && rec.n_raters() >= 2) {
            kernels.push_back(build_case_kernel(rec));
        }
    }
    if (kernels.empty()) {
        throw ValidationError("cv_select_threshold: no eligible training cases");
    }
    std::vector<const CaseKernel*> ptrs;
    ptrs.reserve(kernels.size());
    for (const auto& k : kernels) ptrs.push_back(&k);
    return select_from_kernels(ptrs);
}

BootstrapSummary cluster_bootstrap_diff(const std::map<std::string, double>& per_case_a,
                                        const std::map<std::string, double>& per_case_b,
                                        int n_boot, double rope, std::uint64_t seed,
                                        int threads) {
    if (n_boot < 100) {
        throw ValidationError("n_boot must be at least 100, got " + std::to_string(n_boot));
    }
    if (rope < 0.0) {
        throw ValidationError("rope half-width must be nonnegative");
    }
    if (per_case_a.size() != per_case_b.size()) {
        throw ValidationError("cluster_bootstrap_diff: case sets differ in size");
    }
    std::vector<double> a, b;
    a.reserve(per_case_a.size());
    b.reserve(per_case_b.size());
    {
        auto ia = per_case_a.begin();
        auto ib = per_case_b.begin();
        for (; ia != per_case_a.end(); ++ia, ++ib) {
            if (ia->first != ib->first) {
                throw ValidationError("cluster_bootstrap_diff: case sets differ ('" + ia->first +
                                      "' vs '" + ib->first + "')");
            }
            a.push_back(ia->second);
            b.push_back(ib->second);
        }
    }
    const std::size_t n = a.size();
    if (n == 0) {
        throw ValidationError("cluster_bootstrap_diff: empty input");
    }

    std::vector<double> diffs(static_cast<std::size_t>(n_boot));
    parallel_for(diffs.size(), threads, [&](std::size_t j) {
        RngStream rng(seed, j);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t idx = rng.next_below(n);
            sum += a[idx] - b[idx];
        }
        diffs[j] = sum / static_cast<double>(n);
    });

    std::sort(diffs.begin(), diffs.end());
    BootstrapSummary s;
    s.n_boot = n_boot;
    s.rope_halfwidth = rope;
    s.median_diff = (diffs[(diffs.size() - 1) / 2] + diffs[diffs.size() / 2]) / 2.0;

    // Shortest interval containing 95% of the resampled differences.
    const std::size_t m = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(diffs.size())));
    std::size_t best_lo = 0;
    double best_width = diffs.back() - diffs.front();
    for (std::size_t lo = 0; lo + m <= diffs.size(); ++lo) {
        const double width = diffs[lo + m - 1] - diffs[lo];
        if (width < best_width) {
            best_width = width;
            best_lo = lo;
        }
    }
    s.hdi_low = diffs[best_lo];
    s.hdi_high = diffs[best_lo + m - 1];

    long long above_zero = 0, above_rope = 0;
    for (double d : diffs) {
        above_zero += d > 0.0 ? 1 : 0;
        above_rope += d > rope ? 1 : 0;
    }
    s.prob_direction = static_cast<double>(above_zero) / static_cast<double>(n_boot);
    s.prob_beyond_rope = static_cast<double>(above_rope) / static_cast<double>(n_boot);
    return s;
}

void write_cv_csv(const CvResult& result, std::ostream& out) {
    out << "repeat,fold,strategy,accuracy\n";
    for (const auto& row : result.rows) {
        out << row.repeat << ',' << row.fold << ',' << row.strategy << ','
            << csv::num(row.accuracy) << '\n';
    }
}

void write_bootstrap_csv(const std::vector<NamedBootstrap>& summaries, std::ostream& out) {
    out << "comparison,median_diff,hdi_low,hdi_high,prob_direction,prob_beyond_rope\n";
    for (const auto& s : summaries) {
        out << s.comparison << ',' << csv::num(s.summary.median_diff) << ','
            << csv::num(s.summary.hdi_low) << ',' << csv::num(s.summary.hdi_high) << ','
            << csv::num(s.summary.prob_direction) << ',' << csv::num(s.summary.prob_beyond_rope)
            << '\n';
    }
}

} // namespace hct
