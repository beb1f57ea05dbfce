#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "hct/agreement.hpp"
#include "hct/rng.hpp"
#include "hct/simulate.hpp"

using hct::Dataset;
using hct::KappaOptions;
using hct::Label;

namespace {

std::vector<Label> labels(std::initializer_list<int> values) {
    std::vector<Label> out;
    for (int v : values) out.push_back(hct::label_from_int(v));
    return out;
}

// Cases judged by named raters, with per-case machine scores.
Dataset toy_dataset() {
    Dataset ds;
    ds.name = "toy";
    auto add_case = [&](const char* id, int truth, double score,
                        std::initializer_list<std::pair<const char*, int>> votes) {
        hct::CaseRecord rec;
        rec.case_id = id;
        rec.truth = hct::label_from_int(truth);
        rec.machine_score = score;
        for (const auto& [rater, vote] : votes) {
            rec.human_votes.emplace(rater, hct::label_from_int(vote));
        }
        ds.cases.push_back(std::move(rec));
    };
    // machine labels at threshold 0.5: c1..c4 -> 1, 0, 1, 0; cid always votes
    // against ann, so kappa(ann, cid) = -1 while kappa(ann, bob) = 0
    add_case("c1", 1, 0.9, {{"ann", 1}, {"bob", 1}, {"cid", 0}});
    add_case("c2", 0, 0.1, {{"ann", 0}, {"bob", 1}, {"cid", 1}});
    add_case("c3", 1, 0.8, {{"ann", 1}, {"bob", 0}, {"cid", 0}});
    add_case("c4", 0, 0.2, {{"ann", 0}, {"bob", 0}, {"cid", 1}});
    return ds;
}

} // namespace

TEST_CASE("kappa on hand-checked sequences") {
    const auto mixed = labels({1, 1, 0, 0});
    CHECK(*hct::cohen_kappa(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*hct::cohen_kappa(labels({1, 1, 0, 0}), labels({1, 0, 1, 0})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(*hct::cohen_kappa(labels({1, 0, 1, 0}), labels({0, 1, 0, 1})) ==
          doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("kappa input validation and undefined cases") {
    CHECK_THROWS_AS(hct::cohen_kappa(labels({1, 0}), labels({1})), hct::ValidationError);
    CHECK_THROWS_AS(hct::cohen_kappa(labels({}), labels({})), hct::ValidationError);
    // both raters constant and identical: chance agreement is 1
    CHECK_FALSE(hct::cohen_kappa(labels({1, 1, 1}), labels({1, 1, 1})).has_value());
    CHECK_FALSE(hct::cohen_kappa(labels({0, 0}), labels({0, 0})).has_value());
    // constant but opposite marginals: defined, zero
    CHECK(*hct::cohen_kappa(labels({1, 1}), labels({0, 0})) == doctest::Approx(0.0));
}

TEST_CASE("kappa is symmetric and flip invariant") {
    hct::RngStream rng(51, 0);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 4 + static_cast<int>(rng.next_below(30));
        std::vector<Label> a, b, fa, fb;
        for (int i = 0; i < n; ++i) {
            a.push_back(rng.bernoulli(0.6) ? Label::positive : Label::negative);
            b.push_back(rng.bernoulli(0.4) ? Label::positive : Label::negative);
            fa.push_back(hct::flipped(a.back()));
            fb.push_back(hct::flipped(b.back()));
        }
        const auto ab = hct::cohen_kappa(a, b);
        const auto ba = hct::cohen_kappa(b, a);
        REQUIRE(ab.has_value() == ba.has_value());
        if (ab) {
            CHECK(*ab == doctest::Approx(*ba).epsilon(1e-12));
            const auto flipped = hct::cohen_kappa(fa, fb);
            REQUIRE(flipped.has_value());
            CHECK(*ab == doctest::Approx(*flipped).epsilon(1e-12));
        }
    }
}

TEST_CASE("rater summary on the toy dataset") {
    const Dataset ds = toy_dataset();
    KappaOptions opts;
    opts.min_shared_cases = 1;

    const auto ann = hct::rater_kappa_summary(ds, "ann", opts);
    CHECK(ann.rater_id == "ann");
    CHECK(ann.n_shared_cases == 4);
    CHECK(ann.n_pairs == 2);
    CHECK(ann.accuracy == doctest::Approx(1.0)); // ann matches truth everywhere
    // ann matches the machine labels on every case
    REQUIRE(ann.kappa_hm.has_value());
    CHECK(*ann.kappa_hm == doctest::Approx(1.0).epsilon(1e-12));
    // vs bob: agreement on c1 and c4 only -> p_o = 0.5, marginals 0.5 -> kappa 0
    REQUIRE(ann.kappa_hh.has_value());
    CHECK(*ann.kappa_hh == doctest::Approx((0.0 - 1.0) / 2.0).epsilon(1e-12)); // mean(0, -1)

    CHECK_THROWS_AS(hct::rater_kappa_summary(ds, "nobody", opts), hct::ValidationError);
}

TEST_CASE("shared-case floor excludes sparse pairs") {
    const Dataset ds = toy_dataset();
    KappaOptions strict;
    strict.min_shared_cases = 5; // nobody shares 5 cases
    const auto table = hct::dataset_kappa_table(ds, strict);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.excluded_pairs == 6); // each of 3 raters excludes 2 pairs
    for (const auto& row : table.rows) {
        CHECK_FALSE(row.kappa_hh.has_value());
        CHECK(row.n_pairs == 0);
    }

    KappaOptions permissive;
    permissive.min_shared_cases = 0; // reproduces the floor-free behavior
    const auto full = hct::dataset_kappa_table(ds, permissive);
    CHECK(full.excluded_pairs == 0);
    for (const auto& row : full.rows) CHECK(row.n_pairs == 2);
}

TEST_CASE("kappa table is sorted and serializes") {
    const Dataset ds = toy_dataset();
    const auto table = hct::dataset_kappa_table(ds, {});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].rater_id == "ann");
    CHECK(table.rows[1].rater_id == "bob");
    CHECK(table.rows[2].rater_id == "cid");

    std::ostringstream out;
    hct::write_kappa_csv(table, out);
    const std::string text = out.str();
    CHECK(text.rfind("rater_id,kappa_hh,kappa_hm,accuracy,n_pairs,n_shared_cases\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("closed loop: measured kappas converge to the synthesis targets") {
    // With every case positive, votes coincide with correctness, so the standard
    // label-space kappa equals the correctness-space target the generator uses.
    hct::SynthesisSpec spec;
    spec.n_cases = 10000;
    spec.n_raters = 6;
    spec.base_rate = 1.0;
    spec.p_h = 0.8;
    spec.p_m = 0.8;
    spec.kappa_hh = 0.4;
    spec.kappa_hm = 0.25;
    spec.seed = 61;
    const Dataset ds = hct::synthesize_dataset(spec);

    KappaOptions opts;
    opts.machine_threshold = hct::Threshold::interior(0.5);
    const auto table = hct::dataset_kappa_table(ds, opts);
    REQUIRE(table.rows.size() == 6);
    double hh = 0.0, hm = 0.0;
    for (const auto& row : table.rows) {
        REQUIRE(row.kappa_hh.has_value());
        REQUIRE(row.kappa_hm.has_value());
        hh += *row.kappa_hh;
        hm += *row.kappa_hm;
    }
    CHECK(std::fabs(hh / 6.0 - 0.4) <= 0.03);
    CHECK(std::fabs(hm / 6.0 - 0.25) <= 0.05);
}

TEST_CASE("closed loop: independent machine measures kappa near zero") {
    hct::SynthesisSpec spec;
    spec.n_cases = 8000;
    spec.n_raters = 4;
    spec.base_rate = 1.0;
    spec.p_h = 0.7;
    spec.p_m = 0.75;
    spec.kappa_hh = 0.3;
    spec.kappa_hm = 0.0;
    spec.seed = 62;
    const Dataset ds = hct::synthesize_dataset(spec);
    const auto table = hct::dataset_kappa_table(ds, {});
    double hm = 0.0;
    for (const auto& row : table.rows) {
        REQUIRE(row.kappa_hm.has_value());
        hm += *row.kappa_hm;
    }
    CHECK(std::fabs(hm / 4.0) <= 0.05);
}

TEST_CASE("median human-human vs human-machine gap is computable") {
    hct::SynthesisSpec spec;
    spec.n_cases = 4000;
    spec.n_raters = 5;
    spec.base_rate = 1.0;
    spec.p_h = 0.75;
    spec.p_m = 0.75;
    spec.kappa_hh = 0.5;
    spec.kappa_hm = 0.1;
    spec.seed = 63;
    const Dataset ds = hct::synthesize_dataset(spec);
    const auto table = hct::dataset_kappa_table(ds, {});
    std::vector<double> hh, hm;
    for (const auto& row : table.rows) {
        hh.push_back(*row.kappa_hh);
        hm.push_back(*row.kappa_hm);
    }
    std::sort(hh.begin(), hh.end());
    std::sort(hm.begin(), hm.end());
    const double median_gap = hh[hh.size() / 2] - hm[hm.size() / 2];
    CHECK(median_gap > 0.2); // humans more correlated with each other than with the machine
}
