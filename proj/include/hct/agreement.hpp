#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hct/types.hpp"

namespace hct {

// Two-rater binary Cohen's kappa with chance agreement from the observed
// marginals. nullopt when chance agreement is exactly 1 (both raters constant
// with identical marginals). Throws on empty or length-mismatched input.
std::optional<double> cohen_kappa(std::span<const Label> a, std::span<const Label> b);

struct KappaSummary {
    std::string rater_id;
    std::optional<double> kappa_hh; // mean pairwise kappa vs co-rating humans
    std::optional<double> kappa_hm; // kappa vs binarized machine labels
    double accuracy = 0.0;
    int n_pairs = 0;        // co-rater pairs entering kappa_hh
    int n_shared_cases = 0; // cases this rater judged
};

struct KappaOptions {
    Threshold machine_threshold = Threshold::interior(0.5);
    // Pairs sharing fewer cases than this are excluded (0 disables the floor).
    int min_shared_cases = 5;
};

// Throws ValidationError if the rater is unknown.
KappaSummary rater_kappa_summary(const Dataset& ds, const std::string& rater_id,
                                 const KappaOptions& opts = {});

struct KappaTable {
    std::vector<KappaSummary> rows; // sorted by rater_id
    int min_shared_cases = 0;
    long long excluded_pairs = 0;  // below the shared-case floor
    long long undefined_pairs = 0; // kappa undefined (constant identical raters)
};

KappaTable dataset_kappa_table(const Dataset& ds, const KappaOptions& opts = {});

// CSV columns: rater_id,kappa_hh,kappa_hm,accuracy,n_pairs,n_shared_cases
// (missing kappas serialize as empty fields).
void write_kappa_csv(const KappaTable& table, std::ostream& out);

} // namespace hct
