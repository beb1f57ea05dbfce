#include "hct/reanalysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "hct/core.hpp"
#include "hct/csv.hpp"
#include "hct/normal.hpp"
#include "hct/parallel.hpp"
#include "hct/rng.hpp"

namespace hct {

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

std::map<std::string, Label> preprocess_probabilistic_votes(
    const std::map<std::string, double>& raw, std::uint64_t seed) {
    std::map<std::string, Label> out;
    for (const auto& [rater, prob] : raw) {
        if (!(prob >= 0.0 && prob <= 1.0)) {
            throw ScoreRangeError("probabilistic vote out of [0,1] for rater '" + rater +
                                  "': " + std::to_string(prob));
        }
        Label label;
        if (prob < 0.5) {
            label = Label::negative;
        } else if (prob > 0.5) {
            label = Label::positive;
        } else {
            RngStream rng(seed, rater);
            label = rng.bernoulli(0.5) ? Label::positive : Label::negative;
        }
        out.emplace(rater, label);
    }
    return out;
}

namespace {

std::uint64_t case_seed(std::uint64_t seed, const std::string& case_id) {
    return mix64(seed ^ fnv1a64(case_id));
}

} // namespace

LoadedDataset load_dataset(const LoadPaths& paths, const std::string& name,
                           std::uint64_t seed) {
    std::map<std::string, Label> truth;
    {
        csv::Reader reader(paths.truth, {"case_id", "label"});
        csv::Row row;
        while (reader.next(row)) {
            const Label label = label_from_int(csv::parse_binary(row, 1, paths.truth));
            if (!truth.emplace(row.fields[0], label).second) {
                throw DuplicateKeyError(paths.truth + ":" + std::to_string(row.line_no) +
                                        ": duplicate case_id '" + row.fields[0] + "'");
            }
        }
    }

    std::map<std::string, double> machine;
    {
        csv::Reader reader(paths.machine, {"case_id", "score"});
        csv::Row row;
        while (reader.next(row)) {
            const double score = csv::parse_probability(row, 1, paths.machine);
            if (!machine.emplace(row.fields[0], score).second) {
                throw DuplicateKeyError(paths.machine + ":" + std::to_string(row.line_no) +
                                        ": duplicate case_id '" + row.fields[0] + "'");
            }
        }
    }

    std::map<std::string, std::map<std::string, Label>> votes;
    if (!paths.ratings.empty()) {
        csv::Reader reader(paths.ratings, {"case_id", "rater_id", "vote"});
        csv::Row row;
        while (reader.next(row)) {
            const Label vote = label_from_int(csv::parse_binary(row, 2, paths.ratings));
            if (!votes[row.fields[0]].emplace(row.fields[1], vote).second) {
                throw DuplicateKeyError(paths.ratings + ":" + std::to_string(row.line_no) +
                                        ": duplicate vote for (case_id, rater_id) = ('" +
                                        row.fields[0] + "', '" + row.fields[1] + "')");
            }
        }
    }
    if (!paths.probabilistic_ratings.empty()) {
        // Raw forecasts, binarized per case so 50% entries get a reproducible flip.
        std::map<std::string, std::map<std::string, double>> raw;
        csv::Reader reader(paths.probabilistic_ratings, {"case_id", "rater_id", "prob"});
        csv::Row row;
        while (reader.next(row)) {
            const double prob = csv::parse_probability(row, 2, paths.probabilistic_ratings);
            if (!raw[row.fields[0]].emplace(row.fields[1], prob).second) {
                throw DuplicateKeyError(paths.probabilistic_ratings + ":" +
                                        std::to_string(row.line_no) +
                                        ": duplicate forecast for (case_id, rater_id) = ('" +
                                        row.fields[0] + "', '" + row.fields[1] + "')");
            }
        }
        for (const auto& [cid, rater_probs] : raw) {
            auto binarized = preprocess_probabilistic_votes(rater_probs, case_seed(seed, cid));
            auto& dest = votes[cid];
            for (const auto& [rater, label] : binarized) {
                if (!dest.emplace(rater, label).second) {
                    throw DuplicateKeyError("rater '" + rater + "' appears in both ratings and "
                                            "probabilistic ratings for case '" + cid + "'");
                }
            }
        }
    }

    LoadedDataset out;
    out.dataset.name = name;
    for (const auto& [cid, rater_votes] : votes) {
        const auto t = truth.find(cid);
        if (t == truth.end()) {
            out.rejected.push_back({cid, "missing truth label"});
            continue;
        }
        const auto m = machine.find(cid);
        if (m == machine.end()) {
            out.rejected.push_back({cid, "missing machine score"});
            continue;
        }
        CaseRecord rec;
        rec.case_id = cid;
        rec.truth = t->second;
        rec.human_votes = rater_votes;
        rec.machine_score = m->second;
        out.dataset.cases.push_back(std::move(rec));
    }
    for (const auto& [cid, label] : truth) {
        (void)label;
        if (!votes.count(cid)) out.rejected.push_back({cid, "no human votes"});
    }
    for (const auto& [cid, score] : machine) {
        (void)score;
        if (!votes.count(cid) && !truth.count(cid)) {
            out.rejected.push_back({cid, "no human votes"});
        }
    }
    out.dataset.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Per-case evaluation
// ---------------------------------------------------------------------------

namespace {

// Exact ordered-pair averages for a given machine label, from integer counts.
CaseEval hct_counts(int n, int k, Label truth, Label machine_label) {
    const long long nl = n;
    const long long kl = k;
    const long long total = nl * (nl - 1);
    const long long n_agree = machine_label == Label::positive ? kl : nl - kl;
    const long long n_disagree = nl - n_agree;

    long long positive_decisions;
    if (machine_label == Label::positive) {
        // Agreeing first humans settle on positive; disagreeing ones hand over to
        // a second human, of whom k are positive.
        positive_decisions = kl * (nl - 1) + (nl - kl) * kl;
    } else {
        positive_decisions = kl * (kl - 1);
    }
    const long long correct =
        truth == Label::positive ? positive_decisions : total - positive_decisions;

    CaseEval eval;
    eval.p_correct = static_cast<double>(correct) / static_cast<double>(total);
    eval.p_positive = static_cast<double>(positive_decisions) / static_cast<double>(total);
    eval.cost = 1.0 + static_cast<double>(n_disagree) / static_cast<double>(nl);
    return eval;
}

std::vector<Label> sorted_votes(const CaseRecord& rec) {
    std::vector<Label> votes;
    votes.reserve(rec.human_votes.size());
    for (const auto& [rater, vote] : rec.human_votes) {
        (void)rater;
        votes.push_back(vote);
    }
    return votes;
}

} // namespace

CaseEval evaluate_hct_on_case(const CaseRecord& rec, const Threshold& threshold) {
    const int n = static_cast<int>(rec.n_raters());
    if (n < 2) {
        throw ValidationError("case '" + rec.case_id + "' has fewer than 2 raters");
    }
    const int k = static_cast<int>(rec.n_positive_votes());
    return hct_counts(n, k, rec.truth, binarize(rec.machine_score, threshold));
}

CaseEval evaluate_majority_on_case(const CaseRecord& rec, int k, int max_perms,
                                   std::uint64_t seed) {
    if (k < 1 || k % 2 == 0) {
        throw ValidationError("majority group size must be a positive odd integer, got " +
                              std::to_string(k));
    }
    if (k > 31) {
        throw ValidationError("majority group size capped at 31, got " + std::to_string(k));
    }
    if (max_perms < 1) {
        throw ValidationError("max_perms must be positive");
    }
    const std::vector<Label> votes = sorted_votes(rec);
    const int n = static_cast<int>(votes.size());
    if (n < k) {
        throw ValidationError("case '" + rec.case_id + "' has fewer than " + std::to_string(k) +
                              " raters");
    }
    if (n > 0xFFFF) {
        throw ValidationError("case '" + rec.case_id + "' has too many raters to sample");
    }

    // Number of ordered k-permutations, capped to avoid overflow.
    long long n_perms = 1;
    for (int i = 0; i < k && n_perms <= max_perms; ++i) n_perms *= (n - i);

    const int need = k / 2 + 1;
    long long n_correct = 0;
    long long n_positive = 0;
    long long cost_units = 0; // in humans, summed per permutation
    long long n_evaluated = 0;

    auto tally = [&](const int* idx) {
        int pos = 0;
        for (int i = 0; i < k; ++i) pos += votes[idx[i]] == Label::positive ? 1 : 0;
        const Label decision = pos >= need ? Label::positive : Label::negative;
        n_positive += decision == Label::positive ? 1 : 0;
        n_correct += decision == rec.truth ? 1 : 0;
        if (k == 3) {
            cost_units += votes[idx[0]] == votes[idx[1]] ? 2 : 3;
        } else {
            cost_units += k; // sequential stopping is defined for k=3 only
        }
        ++n_evaluated;
    };

    if (n_perms <= max_perms) {
        // Exhaustive enumeration of ordered k-permutations.
        std::vector<int> idx(k, 0);
        std::vector<bool> used(n, false);
        int depth = 0;
        while (depth >= 0) {
            if (depth == k) {
                tally(idx.data());
                --depth;
                used[idx[depth]] = false;
                ++idx[depth];
                continue;
            }
            while (idx[depth] < n && used[idx[depth]]) ++idx[depth];
            if (idx[depth] >= n) {
                idx[depth] = 0;
                --depth;
                if (depth >= 0) {
                    used[idx[depth]] = false;
                    ++idx[depth];
                }
                continue;
            }
            used[idx[depth]] = true;
            ++depth;
            if (depth < k) idx[depth] = 0;
        }
    } else {
        // Seeded sample of max_perms distinct ordered permutations.
        RngStream rng(seed, fnv1a64(rec.case_id) + kGoldenGamma * static_cast<std::uint64_t>(k));
        std::set<std::array<std::uint16_t, 32>> seen;
        std::array<std::uint16_t, 32> key{};
        int idx[32];
        while (n_evaluated < max_perms) {
            for (int i = 0; i < k; ++i) {
                bool fresh = false;
                while (!fresh) {
                    idx[i] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
                    fresh = true;
                    for (int j = 0; j < i; ++j) {
                        if (idx[j] == idx[i]) {
                            fresh = false;
                            break;
                        }
                    }
                }
            }
            key.fill(0xFFFF);
            for (int i = 0; i < k; ++i) key[i] = static_cast<std::uint16_t>(idx[i]);
            if (seen.insert(key).second) {
                tally(idx);
            }
        }
    }

    CaseEval eval;
    eval.p_correct = static_cast<double>(n_correct) / static_cast<double>(n_evaluated);
    eval.p_positive = static_cast<double>(n_positive) / static_cast<double>(n_evaluated);
    eval.cost = static_cast<double>(cost_units) / static_cast<double>(n_evaluated);
    return eval;
}

const CaseEval& CaseKernel::hct_at(const Threshold& t) const {
    return binarize(machine_score, t) == Label::positive ? hct_if_machine_positive
                                                         : hct_if_machine_negative;
}

CaseEval CaseKernel::machine_at(const Threshold& t) const {
    const Label decision = binarize(machine_score, t);
    CaseEval eval;
    eval.p_positive = decision == Label::positive ? 1.0 : 0.0;
    eval.p_correct = decision == truth ? 1.0 : 0.0;
    eval.cost = 0.0;
    return eval;
}

CaseKernel build_case_kernel(const CaseRecord& rec) {
    const int n = static_cast<int>(rec.n_raters());
    if (n < 2) {
        throw ValidationError("case '" + rec.case_id + "' has fewer than 2 raters");
    }
    const int k = static_cast<int>(rec.n_positive_votes());

    CaseKernel kernel;
    kernel.case_id = rec.case_id;
    kernel.truth = rec.truth;
    kernel.machine_score = rec.machine_score;
    kernel.n_raters = n;
    kernel.n_positive = k;
    kernel.hct_if_machine_positive = hct_counts(n, k, rec.truth, Label::positive);
    kernel.hct_if_machine_negative = hct_counts(n, k, rec.truth, Label::negative);

    const long long nl = n;
    const long long kl = k;
    const long long total = nl * (nl - 1);

    // Accuracy from integer counts throughout, so per-case decisions agree
    // bit-for-bit with the tree path at the threshold extremes.
    auto from_counts = [&](long long positive, long long denom, double cost) {
        const long long correct = rec.truth == Label::positive ? positive : denom - positive;
        return CaseEval{static_cast<double>(correct) / static_cast<double>(denom), cost,
                        static_cast<double>(positive) / static_cast<double>(denom)};
    };
    kernel.single_human = from_counts(kl, nl, 1.0);
    kernel.hierarchy = from_counts(kl * (kl - 1), total, 2.0);
    kernel.polyarchy = from_counts(total - (nl - kl) * (nl - kl - 1), total, 2.0);

    return kernel;
}

KernelTable build_kernels(const Dataset& ds) {
    KernelTable table;
    for (const auto& rec : ds.cases) {
        if (rec.n_raters() < 2) {
            table.skipped.push_back({rec.case_id, "fewer than 2 raters"});
            continue;
        }
        table.kernels.push_back(build_case_kernel(rec));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Threshold sweep
// ---------------------------------------------------------------------------

std::vector<Threshold> candidate_thresholds(const Dataset& ds) {
    std::vector<double> scores;
    scores.reserve(ds.cases.size());
    for (const auto& rec : ds.cases) {
        if (!(rec.machine_score >= 0.0 && rec.machine_score <= 1.0)) {
            throw ScoreRangeError("machine score out of [0,1] for case '" + rec.case_id + "'");
        }
        scores.push_back(rec.machine_score);
    }
    std::sort(scores.begin(), scores.end());
    scores.erase(std::unique(scores.begin(), scores.end()), scores.end());

    std::vector<Threshold> out;
    out.reserve(scores.size() + 2);
    out.push_back(Threshold::all_positive());
    for (double s : scores) out.push_back(Threshold::interior(s));
    out.push_back(Threshold::all_negative());
    return out;
}

namespace {

struct Rates {
    double tpr;
    double fpr;
};

// Aggregates per-case evaluations into a StrategyOutcome.
template <class Eval>
StrategyOutcome aggregate(const std::vector<CaseKernel>& kernels, Eval eval) {
    StrategyOutcome out;
    double pos_mass = 0.0, neg_mass = 0.0;
    long long n_pos = 0, n_neg = 0;
    for (const auto& kernel : kernels) {
        const CaseEval e = eval(kernel);
        out.accuracy += e.p_correct;
        out.cost += e.cost;
        if (kernel.truth == Label::positive) {
            pos_mass += e.p_positive;
            ++n_pos;
        } else {
            neg_mass += e.p_positive;
            ++n_neg;
        }
    }
    const double n = static_cast<double>(kernels.size());
    out.accuracy /= n;
    out.cost /= n;
    if (n_pos == 0 || n_neg == 0) {
        throw UndefinedRateError("TPR/FPR undefined: eligible cases contain " +
                                 std::to_string(n_pos) + " positives and " +
                                 std::to_string(n_neg) + " negatives");
    }
    out.tpr = pos_mass / static_cast<double>(n_pos);
    out.fpr = neg_mass / static_cast<double>(n_neg);
    return out;
}

StrategyOutcome aggregate_majority(const Dataset& ds, const SweepOptions& opts,
                                   std::vector<SkippedCase>& skipped, std::size_t& n_cases) {
    StrategyOutcome out;
    double pos_mass = 0.0, neg_mass = 0.0;
    long long n_pos = 0, n_neg = 0;
    std::vector<const CaseRecord*> eligible;
    for (const auto& rec : ds.cases) {
        if (static_cast<int>(rec.n_raters()) < opts.k_majority) {
            skipped.push_back(
                {rec.case_id, "fewer than " + std::to_string(opts.k_majority) + " raters"});
            continue;
        }
        eligible.push_back(&rec);
    }
    n_cases = eligible.size();
    if (eligible.empty()) {
        throw ValidationError("every case was skipped for the majority vote");
    }
    std::vector<CaseEval> evals(eligible.size());
    parallel_for(eligible.size(), opts.threads, [&](std::size_t i) {
        evals[i] =
            evaluate_majority_on_case(*eligible[i], opts.k_majority, opts.max_perms, opts.seed);
    });
    for (std::size_t i = 0; i < eligible.size(); ++i) {
        out.accuracy += evals[i].p_correct;
        out.cost += evals[i].cost;
        if (eligible[i]->truth == Label::positive) {
            pos_mass += evals[i].p_positive;
            ++n_pos;
        } else {
            neg_mass += evals[i].p_positive;
            ++n_neg;
        }
    }
    const double n = static_cast<double>(eligible.size());
    out.accuracy /= n;
    out.cost /= n;
    if (n_pos == 0 || n_neg == 0) {
        throw UndefinedRateError("TPR/FPR undefined for the majority vote");
    }
    out.tpr = pos_mass / static_cast<double>(n_pos);
    out.fpr = neg_mass / static_cast<double>(n_neg);
    return out;
}

} // namespace

SweepReport sweep(const Dataset& ds, const SweepOptions& opts) {
    ds.validate();
    SweepReport report;

    KernelTable table = build_kernels(ds);
    report.skipped_pairs = table.skipped;
    report.n_cases_pairs = table.kernels.size();
    if (table.kernels.empty()) {
        throw ValidationError("every case was skipped: no case has 2 or more raters");
    }

    const StrategyOutcome majority =
        aggregate_majority(ds, opts, report.skipped_majority, report.n_cases_majority);
    const StrategyOutcome single_human =
        aggregate(table.kernels, [](const CaseKernel& k) { return k.single_human; });
    const StrategyOutcome hierarchy =
        aggregate(table.kernels, [](const CaseKernel& k) { return k.hierarchy; });
    const StrategyOutcome polyarchy =
        aggregate(table.kernels, [](const CaseKernel& k) { return k.polyarchy; });

    const std::vector<Threshold> thresholds = candidate_thresholds(ds);
    report.rows.resize(thresholds.size());
    parallel_for(thresholds.size(), opts.threads, [&](std::size_t i) {
        SweepRow& row = report.rows[i];
        row.threshold = thresholds[i];
        row.hct = aggregate(table.kernels,
                            [&](const CaseKernel& k) { return k.hct_at(thresholds[i]); });
        row.machine = aggregate(table.kernels,
                                [&](const CaseKernel& k) { return k.machine_at(thresholds[i]); });
        row.majority = majority;
        row.single_human = single_human;
        row.hierarchy = hierarchy;
        row.polyarchy = polyarchy;
    });
    return report;
}

PerCaseTable per_case_outcomes(const Dataset& ds, const Threshold& threshold,
                               const SweepOptions& opts) {
    PerCaseTable table;
    table.threshold = threshold;
    const int min_raters = std::max(2, opts.k_majority);
    for (const auto& rec : ds.cases) {
        if (static_cast<int>(rec.n_raters()) < min_raters) continue;
        const CaseKernel kernel = build_case_kernel(rec);
        table.case_ids.push_back(rec.case_id);
        table.truth[rec.case_id] = rec.truth;
        table.hct[rec.case_id] = kernel.hct_at(threshold);
        table.machine[rec.case_id] = kernel.machine_at(threshold);
        table.single_human[rec.case_id] = kernel.single_human;
        table.hierarchy[rec.case_id] = kernel.hierarchy;
        table.polyarchy[rec.case_id] = kernel.polyarchy;
        table.majority[rec.case_id] =
            evaluate_majority_on_case(rec, opts.k_majority, opts.max_perms, opts.seed);
    }
    if (table.case_ids.empty()) {
        throw ValidationError("no case is eligible for both the pairs and majority paths");
    }
    return table;
}

// ---------------------------------------------------------------------------
// Rates and curves
// ---------------------------------------------------------------------------

std::pair<double, double> confusion_rates(const std::map<std::string, double>& positive_fraction,
                                          const std::map<std::string, Label>& truth) {
    double pos_mass = 0.0, neg_mass = 0.0;
    long long n_pos = 0, n_neg = 0;
    for (const auto& [cid, frac] : positive_fraction) {
        const auto t = truth.find(cid);
        if (t == truth.end()) {
            throw ValidationError("no truth label for case '" + cid + "'");
        }
        if (t->second == Label::positive) {
            pos_mass += frac;
            ++n_pos;
        } else {
            neg_mass += frac;
            ++n_neg;
        }
    }
    if (n_pos == 0 || n_neg == 0) {
        throw UndefinedRateError("TPR/FPR undefined: need at least one positive and one "
                                 "negative case");
    }
    return {pos_mass / static_cast<double>(n_pos), neg_mass / static_cast<double>(n_neg)};
}

double single_point_auc(double tpr, double fpr) {
    for (const auto& [v, name] : {std::pair{tpr, "tpr"}, std::pair{fpr, "fpr"}}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string(name) + " must lie in [0,1]");
        }
    }
    constexpr double kClamp = 1e-9;
    const double t = std::min(1.0 - kClamp, std::max(kClamp, tpr));
    const double f = std::min(1.0 - kClamp, std::max(kClamp, fpr));
    return normal_cdf((normal_quantile(t) - normal_quantile(f)) / std::sqrt(2.0));
}

std::vector<CrowdPoint> crowd_curve(const Dataset& ds, const std::vector<int>& sizes,
                                    const SweepOptions& opts) {
    std::vector<CrowdPoint> out;
    out.reserve(sizes.size());
    for (int size : sizes) {
        if (size < 1 || size % 2 == 0) {
            throw ValidationError("crowd sizes must be positive odd integers, got " +
                                  std::to_string(size));
        }
        CrowdPoint point;
        point.size = size;
        point.sequential_cost = size == 3;
        std::vector<const CaseRecord*> eligible;
        for (const auto& rec : ds.cases) {
            if (static_cast<int>(rec.n_raters()) < size) {
                ++point.n_skipped;
            } else {
                eligible.push_back(&rec);
            }
        }
        if (eligible.empty()) {
            throw ValidationError("every case was skipped for crowd size " +
                                  std::to_string(size));
        }
        std::vector<CaseEval> evals(eligible.size());
        parallel_for(eligible.size(), opts.threads, [&](std::size_t i) {
            evals[i] = evaluate_majority_on_case(*eligible[i], size, opts.max_perms, opts.seed);
        });
        for (const auto& e : evals) {
            point.accuracy += e.p_correct;
            point.cost += e.cost;
        }
        point.n_cases = eligible.size();
        point.accuracy /= static_cast<double>(eligible.size());
        point.cost /= static_cast<double>(eligible.size());
        out.push_back(point);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void write_threshold_fields(const Threshold& t, std::ostream& out) {
    switch (t.kind) {
    case Threshold::Kind::all_positive: out << "all_positive,"; break;
    case Threshold::Kind::interior: out << "interior," << csv::num(t.value); break;
    case Threshold::Kind::all_negative: out << "all_negative,"; break;
    }
}

void write_strategy_row(const Threshold& t, const char* strategy, const StrategyOutcome& s,
                        std::ostream& out) {
    write_threshold_fields(t, out);
    out << ',' << strategy << ',' << csv::num(s.accuracy) << ',' << csv::num(s.cost) << ','
        << csv::num(s.tpr) << ',' << csv::num(s.fpr) << '\n';
}

} // namespace

void write_sweep_csv(const SweepReport& report, std::ostream& out) {
    out << "threshold_kind,threshold,strategy,accuracy,cost,tpr,fpr\n";
    for (const auto& row : report.rows) {
        write_strategy_row(row.threshold, "hct", row.hct, out);
        write_strategy_row(row.threshold, "majority", row.majority, out);
        write_strategy_row(row.threshold, "machine", row.machine, out);
        write_strategy_row(row.threshold, "single_human", row.single_human, out);
        write_strategy_row(row.threshold, "hierarchy", row.hierarchy, out);
        write_strategy_row(row.threshold, "polyarchy", row.polyarchy, out);
    }
}

void write_roc_csv(const SweepReport& report, std::ostream& out) {
    out << "threshold_kind,threshold,strategy,tpr,fpr,cost\n";
    auto roc_row = [&](const Threshold& t, const char* strategy, const StrategyOutcome& s) {
        write_threshold_fields(t, out);
        out << ',' << strategy << ',' << csv::num(s.tpr) << ',' << csv::num(s.fpr) << ','
            << csv::num(s.cost) << '\n';
    };
    for (const auto& row : report.rows) {
        roc_row(row.threshold, "hct", row.hct);
        roc_row(row.threshold, "machine", row.machine);
    }
    if (!report.rows.empty()) {
        const auto& first = report.rows.front();
        roc_row(first.threshold, "majority", first.majority);
        roc_row(first.threshold, "single_human", first.single_human);
        roc_row(first.threshold, "hierarchy", first.hierarchy);
        roc_row(first.threshold, "polyarchy", first.polyarchy);
    }
}

void write_crowd_csv(const std::vector<CrowdPoint>& curve, std::ostream& out) {
    out << "size,accuracy,cost,cost_model,n_cases,n_skipped\n";
    for (const auto& p : curve) {
        out << p.size << ',' << csv::num(p.accuracy) << ',' << csv::num(p.cost) << ','
            << (p.sequential_cost ? "sequential" : "all_consulted") << ',' << p.n_cases << ','
            << p.n_skipped << '\n';
    }
}

void write_per_case_jsonl(const PerCaseTable& table, std::ostream& out) {
    for (const auto& cid : table.case_ids) {
        nlohmann::json j;
        j["case_id"] = cid;
        j["threshold"] = to_string(table.threshold);
        j["truth"] = to_int(table.truth.at(cid));
        auto put = [&](const char* name, const std::map<std::string, CaseEval>& m) {
            const CaseEval& e = m.at(cid);
            j["strategies"][name] = {
                {"accuracy", e.p_correct}, {"cost", e.cost}, {"p_positive", e.p_positive}};
        };
        put("hct", table.hct);
        put("majority", table.majority);
        put("machine", table.machine);
        put("single_human", table.single_human);
        put("hierarchy", table.hierarchy);
        put("polyarchy", table.polyarchy);
        out << j.dump() << '\n';
    }
}

void write_dataset_csvs(const Dataset& ds, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream ratings(fs::path(dir) / "ratings.csv");
    std::ofstream machine(fs::path(dir) / "machine.csv");
    std::ofstream truth(fs::path(dir) / "truth.csv");
    if (!ratings || !machine || !truth) {
        throw IoError("cannot create dataset CSVs under " + dir);
    }
    ratings << "case_id,rater_id,vote\n";
    machine << "case_id,score\n";
    truth << "case_id,label\n";
    for (const auto& rec : ds.cases) {
        for (const auto& [rater, vote] : rec.human_votes) {
            ratings << rec.case_id << ',' << rater << ',' << to_int(vote) << '\n';
        }
        machine << rec.case_id << ',' << csv::num(rec.machine_score) << '\n';
        truth << rec.case_id << ',' << to_int(rec.truth) << '\n';
    }
}

} // namespace hct
