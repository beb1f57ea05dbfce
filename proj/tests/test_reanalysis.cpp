#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hct/evalstats.hpp"
#include "hct/reanalysis.hpp"
#include "hct/rng.hpp"
#include "hct/simulate.hpp"
#include "oracles.hpp"

using hct::CaseEval;
using hct::CaseRecord;
using hct::Dataset;
using hct::Label;
using hct::Threshold;

namespace fs = std::filesystem;

namespace {

CaseRecord make_case(std::string id, Label truth, std::vector<Label> votes, double score) {
    CaseRecord rec;
    rec.case_id = std::move(id);
    rec.truth = truth;
    rec.machine_score = score;
    char buf[32];
    for (std::size_t i = 0; i < votes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "r%02zu", i);
        rec.human_votes.emplace(buf, votes[i]);
    }
    return rec;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hct_test_" + std::to_string(hct::mix64(reinterpret_cast<std::uintptr_t>(this))));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const char* name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

hct::LoadPaths write_toy_dataset(const TempDir& dir) {
    hct::LoadPaths paths;
    paths.ratings = dir.file("ratings.csv",
                             "case_id,rater_id,vote\n"
                             "c1,a,1\nc1,b,0\nc1,c,1\n"
                             "c2,a,0\nc2,b,0\nc2,c,1\n");
    paths.machine = dir.file("machine.csv", "case_id,score\nc1,0.9\nc2,0.2\n");
    paths.truth = dir.file("truth.csv", "case_id,label\nc1,1\nc2,0\n");
    return paths;
}

} // namespace

TEST_CASE("well-formed files load into a dataset") {
    TempDir dir;
    const auto loaded = hct::load_dataset(write_toy_dataset(dir), "toy");
    CHECK(loaded.dataset.name == "toy");
    REQUIRE(loaded.dataset.cases.size() == 2);
    CHECK(loaded.rejected.empty());
    const auto& c1 = loaded.dataset.cases[0];
    CHECK(c1.case_id == "c1");
    CHECK(c1.truth == Label::positive);
    CHECK(c1.machine_score == 0.9);
    CHECK(c1.n_raters() == 3);
    CHECK(c1.n_positive_votes() == 2);
}

TEST_CASE("loader raises named errors for malformed rows") {
    TempDir dir;
    auto paths = write_toy_dataset(dir);

    paths.machine = dir.file("machine_bad.csv", "case_id,score\nc1,1.3\nc2,0.2\n");
    CHECK_THROWS_AS(hct::load_dataset(paths), hct::ScoreRangeError);
    CHECK_THROWS_WITH_AS(hct::load_dataset(paths), doctest::Contains("machine_bad.csv:2"),
                         hct::ScoreRangeError);

    paths = write_toy_dataset(dir);
    paths.ratings = dir.file("ratings_bad.csv", "case_id,rater_id,vote\nc1,a,2\n");
    CHECK_THROWS_AS(hct::load_dataset(paths), hct::LabelValueError);

    paths = write_toy_dataset(dir);
    paths.ratings =
        dir.file("ratings_dup.csv", "case_id,rater_id,vote\nc1,a,1\nc1,a,0\n");
    CHECK_THROWS_AS(hct::load_dataset(paths), hct::DuplicateKeyError);

    paths = write_toy_dataset(dir);
    paths.truth = dir.file("truth_bad.csv", "case_id,label\nc1,yes\n");
    CHECK_THROWS_AS(hct::load_dataset(paths), hct::LabelValueError);

    paths = write_toy_dataset(dir);
    paths.truth = dir.file("truth_header.csv", "case,label\nc1,1\n");
    CHECK_THROWS_AS(hct::load_dataset(paths), hct::CsvFormatError);

    paths = write_toy_dataset(dir);
    paths.machine = (dir.path / "missing.csv").string();
    CHECK_THROWS_AS(hct::load_dataset(paths), hct::IoError);
}

TEST_CASE("cases missing a join key are rejected with reasons") {
    TempDir dir;
    hct::LoadPaths paths;
    paths.ratings = dir.file("ratings.csv",
                             "case_id,rater_id,vote\nc1,a,1\nc1,b,0\nc2,a,1\nc3,a,0\nc3,b,1\n");
    paths.machine = dir.file("machine.csv", "case_id,score\nc1,0.9\nc3,0.4\n");
    paths.truth = dir.file("truth.csv", "case_id,label\nc1,1\nc2,0\nc4,1\n");
    const auto loaded = hct::load_dataset(paths);
    REQUIRE(loaded.dataset.cases.size() == 1); // only c1 joins fully
    CHECK(loaded.dataset.cases[0].case_id == "c1");
    REQUIRE(loaded.rejected.size() == 3);
    // c2 lacks a machine score, c3 lacks truth, c4 has no votes
    std::map<std::string, std::string> reasons;
    for (const auto& r : loaded.rejected) reasons[r.case_id] = r.reason;
    CHECK(reasons.at("c2") == "missing machine score");
    CHECK(reasons.at("c3") == "missing truth label");
    CHECK(reasons.at("c4") == "no human votes");
}

TEST_CASE("probabilistic forecasts binarize at one half") {
    std::map<std::string, double> raw{{"a", 0.8}, {"b", 0.2}, {"c", 0.5}};
    const auto votes = hct::preprocess_probabilistic_votes(raw, 42);
    CHECK(votes.at("a") == Label::positive);
    CHECK(votes.at("b") == Label::negative);
    // the midpoint coin flip is reproducible
    const auto again = hct::preprocess_probabilistic_votes(raw, 42);
    CHECK(votes.at("c") == again.at("c"));

    std::map<std::string, double> bad{{"a", 1.2}};
    CHECK_THROWS_AS(hct::preprocess_probabilistic_votes(bad, 1), hct::ScoreRangeError);
}

TEST_CASE("probabilistic ratings route through the loader") {
    TempDir dir;
    hct::LoadPaths paths;
    paths.probabilistic_ratings = dir.file(
        "prob.csv", "case_id,rater_id,prob\nc1,a,0.9\nc1,b,0.1\nc1,c,0.5\nc2,a,0.3\nc2,b,0.6\n");
    paths.machine = dir.file("machine.csv", "case_id,score\nc1,0.7\nc2,0.4\n");
    paths.truth = dir.file("truth.csv", "case_id,label\nc1,1\nc2,0\n");
    const auto loaded = hct::load_dataset(paths, "probs", 11);
    REQUIRE(loaded.dataset.cases.size() == 2);
    CHECK(loaded.dataset.cases[0].human_votes.at("a") == Label::positive);
    CHECK(loaded.dataset.cases[0].human_votes.at("b") == Label::negative);
    // deterministic midpoint assignment
    const auto again = hct::load_dataset(paths, "probs", 11);
    CHECK(loaded.dataset.cases[0].human_votes.at("c") ==
          again.dataset.cases[0].human_votes.at("c"));
}

TEST_CASE("tree evaluation on a case: worked example") {
    const auto rec = make_case("x", Label::positive, {Label::positive, Label::negative}, 0.9);
    const CaseEval eval = hct::evaluate_hct_on_case(rec, Threshold::interior(0.5));
    CHECK(eval.p_correct == 1.0);
    CHECK(eval.cost == 1.5);
    CHECK(eval.p_positive == 1.0);
}

TEST_CASE("tree evaluation: unanimous agreement with the machine costs one") {
    const auto rec =
        make_case("x", Label::positive, {Label::positive, Label::positive, Label::positive}, 0.8);
    const CaseEval eval = hct::evaluate_hct_on_case(rec, Threshold::interior(0.5));
    CHECK(eval.cost == 1.0);
    CHECK(eval.p_correct == 1.0);
}

TEST_CASE("tree evaluation under the all-negative sentinel") {
    const auto rec = make_case("x", Label::positive, {Label::positive, Label::positive}, 0.9);
    const CaseEval eval = hct::evaluate_hct_on_case(rec, Threshold::all_negative());
    CHECK(eval.p_correct == 1.0);
    CHECK(eval.cost == 2.0); // machine always disagrees, both orders consult the tiebreaker
}

TEST_CASE("tree evaluation rejects single-rater cases") {
    const auto rec = make_case("x", Label::positive, {Label::positive}, 0.9);
    CHECK_THROWS_AS(hct::evaluate_hct_on_case(rec, Threshold::interior(0.5)),
                    hct::ValidationError);
}

TEST_CASE("tree evaluation equals ordered-pair enumeration") {
    hct::RngStream rng(31, 0);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 2 + static_cast<int>(rng.next_below(7));
        std::vector<Label> votes;
        for (int i = 0; i < n; ++i) {
            votes.push_back(rng.bernoulli(0.5) ? Label::positive : Label::negative);
        }
        const Label truth = rng.bernoulli(0.5) ? Label::positive : Label::negative;
        const double score = rng.next_unit();
        const auto rec = make_case("x", truth, votes, score);

        Threshold t = Threshold::interior(rng.next_unit());
        const int pick = static_cast<int>(rng.next_below(4));
        if (pick == 0) t = Threshold::all_positive();
        if (pick == 1) t = Threshold::all_negative();

        const CaseEval fast = hct::evaluate_hct_on_case(rec, t);
        const auto brute = oracles::brute_hct_case(rec, t);
        CHECK(fast.p_correct == doctest::Approx(brute.p_correct).epsilon(1e-12));
        CHECK(fast.cost == doctest::Approx(brute.cost).epsilon(1e-12));
        CHECK(fast.p_positive == doctest::Approx(brute.p_positive).epsilon(1e-12));
    }
}

TEST_CASE("majority evaluation: worked example") {
    const auto rec =
        make_case("x", Label::positive, {Label::positive, Label::positive, Label::negative}, 0.5);
    const CaseEval eval = hct::evaluate_majority_on_case(rec, 3, 25000, 0);
    CHECK(eval.p_correct == 1.0);
    CHECK(eval.cost == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

    const auto unanimous =
        make_case("y", Label::negative, {Label::positive, Label::positive, Label::positive}, 0.5);
    const CaseEval wrong = hct::evaluate_majority_on_case(unanimous, 3, 25000, 0);
    CHECK(wrong.p_correct == 0.0);
    CHECK(wrong.cost == 2.0);
}

TEST_CASE("majority evaluation validates sizes") {
    const auto rec = make_case("x", Label::positive, {Label::positive, Label::negative}, 0.5);
    CHECK_THROWS_AS(hct::evaluate_majority_on_case(rec, 3, 25000, 0), hct::ValidationError);
    const auto rec5 = make_case(
        "y", Label::positive,
        {Label::positive, Label::negative, Label::positive, Label::negative, Label::positive},
        0.5);
    CHECK_THROWS_AS(hct::evaluate_majority_on_case(rec5, 4, 25000, 0), hct::ValidationError);
}

TEST_CASE("majority evaluation equals full enumeration below the cap") {
    hct::RngStream rng(37, 0);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 3 + static_cast<int>(rng.next_below(5));
        std::vector<Label> votes;
        for (int i = 0; i < n; ++i) {
            votes.push_back(rng.bernoulli(0.6) ? Label::positive : Label::negative);
        }
        const Label truth = rng.bernoulli(0.5) ? Label::positive : Label::negative;
        const auto rec = make_case("x", truth, votes, 0.5);
        const int k = n >= 5 && rng.bernoulli(0.4) ? 5 : 3;
        const CaseEval eval = hct::evaluate_majority_on_case(rec, k, 25000, 0);
        const auto brute = oracles::brute_majority_case(rec, k);
        CHECK(eval.p_correct == doctest::Approx(brute.p_correct).epsilon(1e-12));
        CHECK(eval.cost == doctest::Approx(brute.cost).epsilon(1e-12));
        CHECK(eval.p_positive == doctest::Approx(brute.p_positive).epsilon(1e-12));
    }
}

TEST_CASE("majority sampling is seeded and deterministic") {
    std::vector<Label> votes;
    hct::RngStream rng(41, 0);
    for (int i = 0; i < 12; ++i) {
        votes.push_back(rng.bernoulli(0.7) ? Label::positive : Label::negative);
    }
    const auto rec = make_case("big", Label::positive, votes, 0.5);
    // 12*11*10 = 1320 ordered triplets; cap at 300 forces sampling
    const CaseEval a = hct::evaluate_majority_on_case(rec, 3, 300, 7);
    const CaseEval b = hct::evaluate_majority_on_case(rec, 3, 300, 7);
    CHECK(a.p_correct == b.p_correct);
    CHECK(a.cost == b.cost);

    // the sampled estimate stays near the exhaustive value
    const CaseEval full = hct::evaluate_majority_on_case(rec, 3, 25000, 7);
    CHECK(std::fabs(a.p_correct - full.p_correct) < 0.1);
    CHECK(std::fabs(a.cost - full.cost) < 0.15);
}

TEST_CASE("candidate thresholds are distinct scores plus sentinels") {
    Dataset ds;
    ds.name = "t";
    ds.cases.push_back(make_case("a", Label::positive, {Label::positive, Label::negative}, 0.7));
    ds.cases.push_back(make_case("b", Label::negative, {Label::positive, Label::negative}, 0.2));
    ds.cases.push_back(make_case("c", Label::negative, {Label::positive, Label::negative}, 0.7));
    const auto thresholds = hct::candidate_thresholds(ds);
    REQUIRE(thresholds.size() == 4);
    CHECK(thresholds[0] == Threshold::all_positive());
    CHECK(thresholds[1] == Threshold::interior(0.2));
    CHECK(thresholds[2] == Threshold::interior(0.7));
    CHECK(thresholds[3] == Threshold::all_negative());

    Dataset same;
    same.cases.push_back(make_case("a", Label::positive, {Label::positive, Label::negative}, 0.5));
    same.cases.push_back(make_case("b", Label::negative, {Label::positive, Label::negative}, 0.5));
    CHECK(hct::candidate_thresholds(same).size() == 3);
}

TEST_CASE("sweep recovers analytic ordering on synthetic data") {
    hct::SynthesisSpec spec;
    spec.n_cases = 400;
    spec.n_raters = 6;
    spec.p_h = 0.7;
    spec.p_m = 0.85;
    spec.seed = 3;
    const Dataset ds = hct::synthesize_dataset(spec);
    const auto report = hct::sweep(ds);
    REQUIRE(report.rows.size() == 402); // 400 distinct scores + sentinels
    CHECK(report.n_cases_pairs == 400);
    CHECK(report.skipped_pairs.empty());

    // the best tree row beats the majority vote when the machine is stronger
    double best_hct = 0.0;
    for (const auto& row : report.rows) best_hct = std::max(best_hct, row.hct.accuracy);
    CHECK(best_hct > report.rows[0].majority.accuracy);

    // majority and fixed strategies are threshold independent
    for (const auto& row : report.rows) {
        CHECK(row.majority.accuracy == report.rows[0].majority.accuracy);
        CHECK(row.single_human.accuracy == report.rows[0].single_human.accuracy);
        CHECK(row.hierarchy.accuracy == report.rows[0].hierarchy.accuracy);
        CHECK(row.polyarchy.accuracy == report.rows[0].polyarchy.accuracy);
    }
}

TEST_CASE("sentinel rows equal the two-person structures exactly") {
    hct::SynthesisSpec spec;
    spec.n_cases = 200;
    spec.n_raters = 5;
    spec.p_h = 0.65;
    spec.p_m = 0.7;
    spec.kappa_hh = 0.3;
    spec.kappa_hm = 0.2;
    spec.seed = 8;
    const Dataset ds = hct::synthesize_dataset(spec);
    const auto report = hct::sweep(ds);
    const auto& first = report.rows.front();  // all_positive sentinel
    const auto& last = report.rows.back();    // all_negative sentinel
    REQUIRE(first.threshold == Threshold::all_positive());
    REQUIRE(last.threshold == Threshold::all_negative());
    CHECK(first.hct.tpr == first.polyarchy.tpr);
    CHECK(first.hct.fpr == first.polyarchy.fpr);
    CHECK(first.hct.accuracy == first.polyarchy.accuracy);
    CHECK(last.hct.tpr == last.hierarchy.tpr);
    CHECK(last.hct.fpr == last.hierarchy.fpr);
    CHECK(last.hct.accuracy == last.hierarchy.accuracy);

    // per-case decisions are identical as well, not just the aggregates
    for (const auto& rec : ds.cases) {
        const auto kernel = hct::build_case_kernel(rec);
        CHECK(kernel.hct_at(Threshold::all_positive()).p_positive == kernel.polyarchy.p_positive);
        CHECK(kernel.hct_at(Threshold::all_negative()).p_positive == kernel.hierarchy.p_positive);
    }
}

TEST_CASE("sweep errors when no case is evaluable") {
    Dataset ds;
    ds.cases.push_back(make_case("a", Label::positive, {Label::positive}, 0.5));
    CHECK_THROWS_AS(hct::sweep(ds), hct::ValidationError);
}

TEST_CASE("sweep skips thin cases per path and reports them") {
    Dataset ds;
    // one single-rater case (skipped everywhere), one two-rater case (pairs only),
    // and two three-rater cases (eligible on both paths)
    ds.cases.push_back(make_case("solo", Label::positive, {Label::positive}, 0.8));
    ds.cases.push_back(make_case("pair", Label::negative, {Label::positive, Label::negative}, 0.3));
    ds.cases.push_back(make_case(
        "t1", Label::positive, {Label::positive, Label::positive, Label::negative}, 0.9));
    ds.cases.push_back(make_case(
        "t2", Label::negative, {Label::negative, Label::positive, Label::negative}, 0.1));

    const auto report = hct::sweep(ds);
    CHECK(report.n_cases_pairs == 3);
    CHECK(report.n_cases_majority == 2);
    REQUIRE(report.skipped_pairs.size() == 1);
    CHECK(report.skipped_pairs[0].case_id == "solo");
    REQUIRE(report.skipped_majority.size() == 2);
    CHECK(report.skipped_majority[0].case_id == "solo");
    CHECK(report.skipped_majority[1].case_id == "pair");

    // the per-case table keeps only cases eligible for both paths
    const auto table = hct::per_case_outcomes(ds, Threshold::interior(0.5));
    CHECK(table.case_ids == std::vector<std::string>{"t1", "t2"});
}

TEST_CASE("confusion rates from fractional decisions") {
    std::map<std::string, Label> truth{
        {"a", Label::positive}, {"b", Label::positive}, {"c", Label::negative}};
    std::map<std::string, double> perfect{{"a", 1.0}, {"b", 1.0}, {"c", 0.0}};
    auto [tpr, fpr] = hct::confusion_rates(perfect, truth);
    CHECK(tpr == 1.0);
    CHECK(fpr == 0.0);

    std::map<std::string, double> all_positive{{"a", 1.0}, {"b", 1.0}, {"c", 1.0}};
    std::tie(tpr, fpr) = hct::confusion_rates(all_positive, truth);
    CHECK(tpr == 1.0);
    CHECK(fpr == 1.0);

    std::map<std::string, double> all_negative{{"a", 0.0}, {"b", 0.0}, {"c", 0.0}};
    std::tie(tpr, fpr) = hct::confusion_rates(all_negative, truth);
    CHECK(tpr == 0.0);
    CHECK(fpr == 0.0);

    std::map<std::string, double> fractional{{"a", 0.5}, {"b", 1.0}, {"c", 0.25}};
    std::tie(tpr, fpr) = hct::confusion_rates(fractional, truth);
    CHECK(tpr == doctest::Approx(0.75));
    CHECK(fpr == doctest::Approx(0.25));

    std::map<std::string, Label> single{{"a", Label::positive}};
    std::map<std::string, double> one{{"a", 1.0}};
    CHECK_THROWS_AS(hct::confusion_rates(one, single), hct::UndefinedRateError);
}

TEST_CASE("binormal single-point AUC") {
    for (double x = 0.1; x <= 0.91; x += 0.1) {
        CHECK(std::fabs(hct::single_point_auc(x, x) - 0.5) <= 1e-10);
    }
    CHECK(hct::single_point_auc(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hct::single_point_auc(0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hct::single_point_auc(0.8, 0.2) == doctest::Approx(0.8830).epsilon(1e-4 / 0.8830));

    // high-precision oracle: quantiles by bisection on the CDF
    for (double tpr = 0.05; tpr < 1.0; tpr += 0.13) {
        for (double fpr = 0.05; fpr < 1.0; fpr += 0.13) {
            const double expected = hct::normal_cdf(
                (oracles::bisect_normal_quantile(tpr) - oracles::bisect_normal_quantile(fpr)) /
                std::sqrt(2.0));
            CHECK(hct::single_point_auc(tpr, fpr) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(hct::single_point_auc(1.2, 0.0), hct::ValidationError);
}

TEST_CASE("crowd curve grows with group size on independent data") {
    hct::SynthesisSpec spec;
    spec.n_cases = 600;
    spec.n_raters = 7;
    spec.p_h = 0.7;
    spec.p_m = 0.7;
    spec.seed = 10;
    const Dataset ds = hct::synthesize_dataset(spec);
    const auto curve = hct::crowd_curve(ds, {1, 3, 5, 7});
    REQUIRE(curve.size() == 4);

    // size 1 equals the mean single-human accuracy
    const auto kernels = hct::build_kernels(ds);
    double single = 0.0;
    for (const auto& k : kernels.kernels) single += k.single_human.p_correct;
    single /= static_cast<double>(kernels.kernels.size());
    CHECK(curve[0].accuracy == doctest::Approx(single).epsilon(1e-12));

    // nondecreasing up to sampling noise, tracking the analytic curve
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].accuracy >= curve[i - 1].accuracy - 0.02);
        CHECK(std::fabs(curve[i].accuracy - hct::maj_accuracy_k(curve[i].size, 0.7)) < 0.06);
    }
    CHECK(curve[1].sequential_cost);
    CHECK_FALSE(curve[2].sequential_cost);
    CHECK(curve[2].cost == 5.0);

    CHECK_THROWS_AS(hct::crowd_curve(ds, {2}), hct::ValidationError);
}

TEST_CASE("dataset CSV writer round-trips through the loader") {
    hct::SynthesisSpec spec;
    spec.n_cases = 40;
    spec.n_raters = 4;
    spec.p_h = 0.75;
    spec.p_m = 0.8;
    spec.kappa_hh = 0.2;
    spec.kappa_hm = 0.1;
    spec.seed = 12;
    const Dataset ds = hct::synthesize_dataset(spec);

    TempDir dir;
    hct::write_dataset_csvs(ds, dir.path.string());
    hct::LoadPaths paths;
    paths.ratings = (dir.path / "ratings.csv").string();
    paths.machine = (dir.path / "machine.csv").string();
    paths.truth = (dir.path / "truth.csv").string();
    const auto loaded = hct::load_dataset(paths, ds.name);

    REQUIRE(loaded.dataset.cases.size() == ds.cases.size());
    for (std::size_t i = 0; i < ds.cases.size(); ++i) {
        CHECK(loaded.dataset.cases[i].case_id == ds.cases[i].case_id);
        CHECK(loaded.dataset.cases[i].truth == ds.cases[i].truth);
        CHECK(loaded.dataset.cases[i].machine_score == ds.cases[i].machine_score); // exact
        CHECK(loaded.dataset.cases[i].human_votes == ds.cases[i].human_votes);
    }
}

TEST_CASE("sweep CSV and per-case JSONL serialize") {
    hct::SynthesisSpec spec;
    spec.n_cases = 30;
    spec.n_raters = 4;
    spec.p_h = 0.7;
    spec.p_m = 0.75;
    spec.seed = 13;
    const Dataset ds = hct::synthesize_dataset(spec);
    const auto report = hct::sweep(ds);

    std::ostringstream sweep_out;
    hct::write_sweep_csv(report, sweep_out);
    const std::string text = sweep_out.str();
    CHECK(text.rfind("threshold_kind,threshold,strategy,accuracy,cost,tpr,fpr\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) ==
          1 + report.rows.size() * 6);

    std::ostringstream roc_out;
    hct::write_roc_csv(report, roc_out);
    CHECK(roc_out.str().rfind("threshold_kind,threshold,strategy,tpr,fpr,cost\n", 0) == 0);

    const auto table = hct::per_case_outcomes(ds, hct::select_threshold(report.rows));
    std::ostringstream jsonl;
    hct::write_per_case_jsonl(table, jsonl);
    const std::string lines = jsonl.str();
    CHECK(static_cast<std::size_t>(std::count(lines.begin(), lines.end(), '\n')) ==
          ds.cases.size());
    CHECK(lines.find("\"case_id\"") != std::string::npos);
    CHECK(lines.find("\"hct\"") != std::string::npos);
}
