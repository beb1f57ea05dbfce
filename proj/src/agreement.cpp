#include "hct/agreement.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "hct/core.hpp"
#include "hct/csv.hpp"

namespace hct {

std::optional<double> cohen_kappa(std::span<const Label> a, std::span<const Label> b) {
    if (a.size() != b.size()) {
        throw ValidationError("cohen_kappa: sequence lengths differ (" +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) {
        throw ValidationError("cohen_kappa: empty input");
    }
    const double n = static_cast<double>(a.size());
    double agree = 0.0, pos_a = 0.0, pos_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        agree += a[i] == b[i] ? 1.0 : 0.0;
        pos_a += a[i] == Label::positive ? 1.0 : 0.0;
        pos_b += b[i] == Label::positive ? 1.0 : 0.0;
    }
    const double p_o = agree / n;
    const double ma = pos_a / n;
    const double mb = pos_b / n;
    const double p_e = ma * mb + (1.0 - ma) * (1.0 - mb);
    if (p_e >= 1.0) {
        return std::nullopt; // both raters constant and identical
    }
    return (p_o - p_e) / (1.0 - p_e);
}

namespace {

// rater -> (case -> vote), cases in sorted order via std::map.
using VoteIndex = std::map<std::string, std::map<std::string, Label>>;

VoteIndex build_vote_index(const Dataset& ds) {
    VoteIndex index;
    for (const auto& rec : ds.cases) {
        for (const auto& [rater, vote] : rec.human_votes) {
            index[rater].emplace(rec.case_id, vote);
        }
    }
    return index;
}

struct PairwiseStats {
    std::optional<double> mean_kappa;
    int n_pairs = 0;
    long long excluded = 0;
    long long undefined = 0;
};

PairwiseStats pairwise_kappa_vs_others(const VoteIndex& index, const std::string& rater_id,
                                       int min_shared_cases) {
    const auto& own = index.at(rater_id);
    PairwiseStats stats;
    double sum = 0.0;
    for (const auto& [other_id, other] : index) {
        if (other_id == rater_id) continue;
        std::vector<Label> a, b;
        for (const auto& [cid, vote] : own) {
            const auto it = other.find(cid);
            if (it != other.end()) {
                a.push_back(vote);
                b.push_back(it->second);
            }
        }
        if (a.empty()) continue; // not a co-rater
        if (static_cast<int>(a.size()) < min_shared_cases) {
            ++stats.excluded;
            continue;
        }
        const auto kappa = cohen_kappa(a, b);
        if (!kappa) {
            ++stats.undefined;
            continue;
        }
        sum += *kappa;
        ++stats.n_pairs;
    }
    if (stats.n_pairs > 0) {
        stats.mean_kappa = sum / stats.n_pairs;
    }
    return stats;
}

using CaseIndex = std::map<std::string, const CaseRecord*>;

CaseIndex build_case_index(const Dataset& ds) {
    CaseIndex by_id;
    for (const auto& rec : ds.cases) by_id.emplace(rec.case_id, &rec);
    return by_id;
}

KappaSummary summarize_rater(const CaseIndex& by_id, const VoteIndex& index,
                             const std::string& rater_id, const KappaOptions& opts,
                             long long* excluded, long long* undefined) {
    const auto it = index.find(rater_id);
    if (it == index.end()) {
        throw ValidationError("unknown rater '" + rater_id + "'");
    }
    const auto& own = it->second;

    KappaSummary summary;
    summary.rater_id = rater_id;
    summary.n_shared_cases = static_cast<int>(own.size());

    const PairwiseStats hh = pairwise_kappa_vs_others(index, rater_id, opts.min_shared_cases);
    summary.kappa_hh = hh.mean_kappa;
    summary.n_pairs = hh.n_pairs;
    if (excluded) *excluded += hh.excluded;
    if (undefined) *undefined += hh.undefined;

    // Machine labels and accuracy over the cases this rater judged.
    std::vector<Label> votes, machine;
    double correct = 0.0;
    for (const auto& [cid, vote] : own) {
        const CaseRecord& rec = *by_id.at(cid);
        votes.push_back(vote);
        machine.push_back(binarize(rec.machine_score, opts.machine_threshold));
        correct += vote == rec.truth ? 1.0 : 0.0;
    }
    summary.accuracy = correct / static_cast<double>(own.size());
    summary.kappa_hm = cohen_kappa(votes, machine);
    return summary;
}

} // namespace

KappaSummary rater_kappa_summary(const Dataset& ds, const std::string& rater_id,
                                 const KappaOptions& opts) {
    const VoteIndex index = build_vote_index(ds);
    return summarize_rater(build_case_index(ds), index, rater_id, opts, nullptr, nullptr);
}

KappaTable dataset_kappa_table(const Dataset& ds, const KappaOptions& opts) {
    const VoteIndex index = build_vote_index(ds);
    const CaseIndex by_id = build_case_index(ds);
    KappaTable table;
    table.min_shared_cases = opts.min_shared_cases;
    for (const auto& [rater_id, votes] : index) {
        (void)votes;
        table.rows.push_back(summarize_rater(by_id, index, rater_id, opts, &table.excluded_pairs,
                                             &table.undefined_pairs));
    }
    return table;
}

void write_kappa_csv(const KappaTable& table, std::ostream& out) {
    out << "rater_id,kappa_hh,kappa_hm,accuracy,n_pairs,n_shared_cases\n";
    for (const auto& row : table.rows) {
        out << row.rater_id << ',' << (row.kappa_hh ? csv::num(*row.kappa_hh) : "") << ','
            << (row.kappa_hm ? csv::num(*row.kappa_hm) : "") << ',' << csv::num(row.accuracy)
            << ',' << row.n_pairs << ',' << row.n_shared_cases << '\n';
    }
}

} // namespace hct
