// Command-line front end: reproducible runs of the analytic grids, Monte Carlo
// estimates, synthetic data generation, dataset reanalysis, kappa tables, and
// cross-validation. Every command writes a manifest.ini that replays the run
// byte-for-byte via `hct --config manifest.ini`.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "hct/agreement.hpp"
#include "hct/analytic.hpp"
#include "hct/csv.hpp"
#include "hct/evalstats.hpp"
#include "hct/reanalysis.hpp"
#include "hct/simulate.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct ManifestEntry {
    std::string key;
    std::string value;
};

class Manifest {
public:
    explicit Manifest(std::string command) : command_(std::move(command)) {}

    void set(const std::string& key, const std::string& v) { entries_.push_back({key, v}); }
    void set(const std::string& key, double v) { set(key, hct::csv::num(v)); }
    void set(const std::string& key, std::uint64_t v) { set(key, std::to_string(v)); }
    void set(const std::string& key, int v) { set(key, std::to_string(v)); }

    void write(const fs::path& out_dir) const {
        std::ofstream out(out_dir / "manifest.ini");
        if (!out) throw hct::IoError("cannot write manifest under " + out_dir.string());
        out << '[' << command_ << "]\n";
        for (const auto& e : entries_) out << e.key << '=' << e.value << '\n';
    }

private:
    std::string command_;
    std::vector<ManifestEntry> entries_;
};

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw hct::IoError("cannot create output directory " + out + ": " + ec.message());
    return dir;
}

std::ofstream open_out(const fs::path& dir, const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw hct::IoError("cannot write " + (dir / name).string());
    return out;
}

// ---------------------------------------------------------------------------
// analytic-grid
// ---------------------------------------------------------------------------

struct GridArgs {
    int resolution = 201;
    double kappa_hh = 0.0;
    double kappa_hm = 0.0;
    int threads = 1;
    std::string out;
};

void run_grid(const GridArgs& a) {
    const fs::path dir = prepare_out_dir(a.out);
    const hct::RegionGrid grid =
        hct::generate_region_grid(a.resolution, a.kappa_hh, a.kappa_hm, a.threads);
    {
        auto out = open_out(dir, "grid.csv");
        hct::write_region_grid_csv(grid, out);
    }
    {
        const hct::RegionAreaSummary s = hct::summarize_region_grid(grid);
        auto out = open_out(dir, "summary.csv");
        out << "region,cells,fraction_of_feasible\n";
        for (int r = 0; r < 4; ++r) {
            const auto label = static_cast<hct::RegionLabel>(r);
            out << hct::region_name(label) << ',' << s.count[r] << ','
                << hct::csv::num(s.feasible_fraction(label)) << '\n';
        }
        out << "infeasible," << s.infeasible_cells << ",\n";
    }
    Manifest m("analytic-grid");
    m.set("resolution", a.resolution);
    m.set("kappa-hh", a.kappa_hh);
    m.set("kappa-hm", a.kappa_hm);
    m.set("threads", a.threads);
    m.set("out", a.out);
    m.write(dir);
    std::cout << "wrote " << (dir / "grid.csv").string() << " (" << a.resolution << "x"
              << a.resolution << " cells)\n";
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    double p_h = 0.8;
    double p_m = 0.8;
    double kappa_hh = 0.0;
    double kappa_hm = 0.0;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string strategy = "both";
    std::string out;
};

void run_simulate(const SimulateArgs& a) {
    const fs::path dir = prepare_out_dir(a.out);

    hct::SimConfig cfg;
    cfg.n_trials = a.trials;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    double analytic_hct_acc, analytic_hct_cost, analytic_maj_acc, analytic_maj_cost;
    if (a.kappa_hh == 0.0 && a.kappa_hm == 0.0) {
        const hct::IndependentParams p{a.p_h, a.p_m};
        cfg.params = p;
        analytic_hct_acc = hct::hct_accuracy_indep(p);
        analytic_hct_cost = hct::hct_cost_indep(p);
        analytic_maj_acc = hct::maj_accuracy_indep(a.p_h);
        analytic_maj_cost = hct::maj_cost_indep(a.p_h);
    } else {
        // value() throws InfeasibleError with the violated bound when the kappa
        // targets cannot be realized.
        const hct::CopyModel hm = hct::solve_copy_model(a.p_h, a.p_m, a.kappa_hm).value();
        const hct::CopyModel hh = hct::solve_copy_model(a.p_h, a.p_h, a.kappa_hh).value();
        const hct::CorrelatedTreeParams p{a.p_h, hm, hh};
        cfg.params = p;
        analytic_hct_acc = hct::hct_accuracy_corr(p);
        analytic_hct_cost = hct::hct_cost_corr(p);
        analytic_maj_acc = hct::maj_accuracy_corr(a.p_h, hh);
        analytic_maj_cost = hct::maj_cost_corr(a.p_h, hh);
    }

    auto out = open_out(dir, "estimate.csv");
    out << "strategy,accuracy_mean,accuracy_stderr,cost_mean,cost_stderr,"
           "analytic_accuracy,analytic_cost,n_trials\n";
    auto emit = [&](const char* name, const hct::SimEstimate& est, double acc, double cost) {
        out << name << ',' << hct::csv::num(est.accuracy_mean) << ','
            << hct::csv::num(est.accuracy_stderr) << ',' << hct::csv::num(est.cost_mean) << ','
            << hct::csv::num(est.cost_stderr) << ',' << hct::csv::num(acc) << ','
            << hct::csv::num(cost) << ',' << est.n_trials << '\n';
    };
    if (a.strategy == "both" || a.strategy == "hct") {
        emit("hct", hct::simulate_hct(cfg), analytic_hct_acc, analytic_hct_cost);
    }
    if (a.strategy == "both" || a.strategy == "majority") {
        emit("majority", hct::simulate_majority(cfg), analytic_maj_acc, analytic_maj_cost);
    }

    Manifest m("simulate");
    m.set("p-h", a.p_h);
    m.set("p-m", a.p_m);
    m.set("kappa-hh", a.kappa_hh);
    m.set("kappa-hm", a.kappa_hm);
    m.set("trials", a.trials);
    m.set("seed", a.seed);
    m.set("threads", a.threads);
    m.set("strategy", a.strategy);
    m.set("out", a.out);
    m.write(dir);
    std::cout << "wrote " << (dir / "estimate.csv").string() << '\n';
}

// ---------------------------------------------------------------------------
// synthesize
// ---------------------------------------------------------------------------

struct SynthesizeArgs {
    std::uint64_t cases = 500;
    int raters = 20;
    double base_rate = 0.5;
    double p_h = 0.7;
    double p_m = 0.75;
    double kappa_hh = 0.0;
    double kappa_hm = 0.0;
    double score_noise = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

void run_synthesize(const SynthesizeArgs& a) {
    const fs::path dir = prepare_out_dir(a.out);
    hct::SynthesisSpec spec;
    spec.n_cases = a.cases;
    spec.n_raters = a.raters;
    spec.base_rate = a.base_rate;
    spec.p_h = a.p_h;
    spec.p_m = a.p_m;
    spec.kappa_hh = a.kappa_hh;
    spec.kappa_hm = a.kappa_hm;
    spec.machine_score_noise = a.score_noise;
    spec.seed = a.seed;
    const hct::Dataset ds = hct::synthesize_dataset(spec);
    hct::write_dataset_csvs(ds, dir.string());

    Manifest m("synthesize");
    m.set("cases", a.cases);
    m.set("raters", a.raters);
    m.set("base-rate", a.base_rate);
    m.set("p-h", a.p_h);
    m.set("p-m", a.p_m);
    m.set("kappa-hh", a.kappa_hh);
    m.set("kappa-hm", a.kappa_hm);
    m.set("score-noise", a.score_noise);
    m.set("seed", a.seed);
    m.set("out", a.out);
    m.write(dir);
    std::cout << "wrote " << a.cases << " cases under " << dir.string() << '\n';
}

// ---------------------------------------------------------------------------
// reanalyze
// ---------------------------------------------------------------------------

struct DatasetArgs {
    std::string ratings;
    std::string machine;
    std::string truth;
    std::string prob_ratings;
    std::string name = "dataset";
};

hct::LoadedDataset load_from_args(const DatasetArgs& a, std::uint64_t seed) {
    hct::LoadPaths paths;
    paths.ratings = a.ratings;
    paths.machine = a.machine;
    paths.truth = a.truth;
    paths.probabilistic_ratings = a.prob_ratings;
    return hct::load_dataset(paths, a.name, seed);
}

void write_rejected(const std::vector<hct::RejectedCase>& rejected, const fs::path& dir) {
    if (rejected.empty()) return;
    auto out = open_out(dir, "rejected.csv");
    out << "case_id,reason\n";
    for (const auto& r : rejected) out << r.case_id << ',' << r.reason << '\n';
}

struct ReanalyzeArgs {
    DatasetArgs data;
    std::uint64_t seed = 0;
    int threads = 1;
    int k_majority = 3;
    int max_perms = 25000;
    int min_shared = 5;
    std::vector<int> crowd_sizes = {1, 3, 5, 7, 9, 11, 13, 15};
    bool crowd_sizes_explicit = false;
    int n_boot = 10000;
    double rope = 0.01;
    std::string out;
};

void run_reanalyze(const ReanalyzeArgs& a) {
    const fs::path dir = prepare_out_dir(a.out);
    const hct::LoadedDataset loaded = load_from_args(a.data, a.seed);
    write_rejected(loaded.rejected, dir);

    hct::SweepOptions opts;
    opts.k_majority = a.k_majority;
    opts.max_perms = a.max_perms;
    opts.seed = a.seed;
    opts.threads = a.threads;

    const hct::SweepReport report = hct::sweep(loaded.dataset, opts);
    {
        auto out = open_out(dir, "sweep.csv");
        hct::write_sweep_csv(report, out);
    }
    {
        auto out = open_out(dir, "roc.csv");
        hct::write_roc_csv(report, out);
    }
    if (!report.skipped_pairs.empty() || !report.skipped_majority.empty()) {
        auto out = open_out(dir, "skipped.csv");
        out << "path,case_id,reason\n";
        for (const auto& s : report.skipped_pairs) {
            out << "pairs," << s.case_id << ',' << s.reason << '\n';
        }
        for (const auto& s : report.skipped_majority) {
            out << "majority," << s.case_id << ',' << s.reason << '\n';
        }
    }

    const hct::Threshold best = hct::select_threshold(report.rows);
    const hct::PerCaseTable per_case = hct::per_case_outcomes(loaded.dataset, best, opts);
    {
        auto out = open_out(dir, "per_case.jsonl");
        hct::write_per_case_jsonl(per_case, out);
    }
    {
        auto accuracies = [](const std::map<std::string, hct::CaseEval>& m) {
            std::map<std::string, double> out;
            for (const auto& [cid, e] : m) out.emplace(cid, e.p_correct);
            return out;
        };
        const auto hct_acc = accuracies(per_case.hct);
        std::vector<hct::NamedBootstrap> summaries;
        summaries.push_back({"hct_vs_majority_per_case",
                             hct::cluster_bootstrap_diff(hct_acc, accuracies(per_case.majority),
                                                         a.n_boot, a.rope, a.seed, a.threads)});
        summaries.push_back({"hct_vs_machine_per_case",
                             hct::cluster_bootstrap_diff(hct_acc, accuracies(per_case.machine),
                                                         a.n_boot, a.rope, a.seed, a.threads)});
        summaries.push_back({"hct_vs_single_human_per_case",
                             hct::cluster_bootstrap_diff(hct_acc,
                                                         accuracies(per_case.single_human),
                                                         a.n_boot, a.rope, a.seed, a.threads)});
        auto out = open_out(dir, "bootstrap.csv");
        hct::write_bootstrap_csv(summaries, out);
    }
    long long kappa_excluded = 0, kappa_undefined = 0;
    {
        hct::KappaOptions kopts;
        kopts.machine_threshold = best;
        kopts.min_shared_cases = a.min_shared;
        const hct::KappaTable table = hct::dataset_kappa_table(loaded.dataset, kopts);
        kappa_excluded = table.excluded_pairs;
        kappa_undefined = table.undefined_pairs;
        auto out = open_out(dir, "kappa.csv");
        hct::write_kappa_csv(table, out);
    }
    std::vector<int> crowd_sizes = a.crowd_sizes;
    if (!a.crowd_sizes_explicit) {
        // Trim the default ladder to sizes at least one case can seat.
        std::size_t max_raters = 0;
        for (const auto& rec : loaded.dataset.cases) {
            max_raters = std::max(max_raters, rec.n_raters());
        }
        std::erase_if(crowd_sizes,
                      [&](int s) { return static_cast<std::size_t>(s) > max_raters; });
    }
    {
        const auto curve = hct::crowd_curve(loaded.dataset, crowd_sizes, opts);
        auto out = open_out(dir, "crowd.csv");
        hct::write_crowd_csv(curve, out);
    }
    {
        // Strategy table at the accuracy-maximizing threshold, plus cost savings
        // of the tree relative to the majority vote.
        const hct::SweepRow* best_row = nullptr;
        for (const auto& row : report.rows) {
            if (row.threshold == best) best_row = &row;
        }
        auto out = open_out(dir, "summary.csv");
        out << "metric,value\n";
        out << "best_threshold," << hct::to_string(best) << '\n';
        out << "hct_accuracy," << hct::csv::num(best_row->hct.accuracy) << '\n';
        out << "majority_accuracy," << hct::csv::num(best_row->majority.accuracy) << '\n';
        out << "machine_accuracy," << hct::csv::num(best_row->machine.accuracy) << '\n';
        out << "single_human_accuracy," << hct::csv::num(best_row->single_human.accuracy) << '\n';
        out << "hct_cost," << hct::csv::num(best_row->hct.cost) << '\n';
        out << "majority_cost," << hct::csv::num(best_row->majority.cost) << '\n';
        out << "human_cost_saving_fraction,"
            << hct::csv::num(1.0 - best_row->hct.cost / best_row->majority.cost) << '\n';
        out << "cases_pairs," << report.n_cases_pairs << '\n';
        out << "cases_majority," << report.n_cases_majority << '\n';
        out << "kappa_min_shared_cases," << a.min_shared << '\n';
        out << "kappa_excluded_pairs," << kappa_excluded << '\n';
        out << "kappa_undefined_pairs," << kappa_undefined << '\n';
    }

    Manifest m("reanalyze");
    m.set("ratings", a.data.ratings);
    m.set("machine", a.data.machine);
    m.set("truth", a.data.truth);
    if (!a.data.prob_ratings.empty()) m.set("prob-ratings", a.data.prob_ratings);
    m.set("name", a.data.name);
    m.set("seed", a.seed);
    m.set("threads", a.threads);
    m.set("k", a.k_majority);
    m.set("max-perms", a.max_perms);
    m.set("min-shared", a.min_shared);
    {
        std::string sizes;
        for (int s : crowd_sizes) {
            if (!sizes.empty()) sizes += ',';
            sizes += std::to_string(s);
        }
        m.set("crowd-sizes", sizes);
    }
    m.set("n-boot", a.n_boot);
    m.set("rope", a.rope);
    m.set("out", a.out);
    m.write(dir);
    std::cout << "reanalysis written under " << dir.string() << '\n';
}

// ---------------------------------------------------------------------------
// kappa
// ---------------------------------------------------------------------------

struct KappaArgs {
    DatasetArgs data;
    double threshold = -1.0; // <0 selects the sweep's accuracy-maximizing threshold
    int min_shared = 5;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

void run_kappa(const KappaArgs& a) {
    const fs::path dir = prepare_out_dir(a.out);
    const hct::LoadedDataset loaded = load_from_args(a.data, a.seed);

    hct::KappaOptions kopts;
    kopts.min_shared_cases = a.min_shared;
    if (a.threshold >= 0.0) {
        kopts.machine_threshold = hct::Threshold::interior(a.threshold);
    } else {
        hct::SweepOptions opts;
        opts.seed = a.seed;
        opts.threads = a.threads;
        kopts.machine_threshold = hct::select_threshold(hct::sweep(loaded.dataset, opts).rows);
    }
    const hct::KappaTable table = hct::dataset_kappa_table(loaded.dataset, kopts);
    {
        auto out = open_out(dir, "kappa.csv");
        hct::write_kappa_csv(table, out);
    }
    Manifest m("kappa");
    m.set("ratings", a.data.ratings);
    m.set("machine", a.data.machine);
    m.set("truth", a.data.truth);
    if (!a.data.prob_ratings.empty()) m.set("prob-ratings", a.data.prob_ratings);
    m.set("name", a.data.name);
    m.set("threshold", a.threshold);
    m.set("min-shared", a.min_shared);
    m.set("seed", a.seed);
    m.set("threads", a.threads);
    m.set("out", a.out);
    m.write(dir);
    std::cout << "kappa table written under " << dir.string() << " (threshold "
              << hct::to_string(kopts.machine_threshold) << ", min shared cases "
              << a.min_shared << ", excluded pairs " << table.excluded_pairs
              << ", undefined pairs " << table.undefined_pairs << ")\n";
}

// ---------------------------------------------------------------------------
// crossval
// ---------------------------------------------------------------------------

struct CrossvalArgs {
    DatasetArgs data;
    int repeats = 1000;
    int folds = 5;
    int n_boot = 10000;
    double rope = 0.01;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

void run_crossval(const CrossvalArgs& a) {
    const fs::path dir = prepare_out_dir(a.out);
    const hct::LoadedDataset loaded = load_from_args(a.data, a.seed);

    hct::CvConfig cfg;
    cfg.n_repeats = a.repeats;
    cfg.n_folds = a.folds;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    cfg.sweep.seed = a.seed;
    cfg.sweep.threads = a.threads;
    const hct::CvResult result = hct::repeated_cv(loaded.dataset, cfg);
    {
        auto out = open_out(dir, "cv.csv");
        hct::write_cv_csv(result, out);
    }
    {
        // (repeat, fold) cells are the bootstrap clusters, mirroring how the CV
        // table is consumed downstream.
        std::map<std::string, std::map<std::string, double>> cells;
        char key[32];
        for (const auto& row : result.rows) {
            std::snprintf(key, sizeof(key), "r%05d_f%02d", row.repeat, row.fold);
            cells[row.strategy][key] = row.accuracy;
        }
        std::vector<hct::NamedBootstrap> summaries;
        for (const char* other : {"majority", "machine", "single_human"}) {
            summaries.push_back(
                {std::string("hct_vs_") + other + "_cv_cells",
                 hct::cluster_bootstrap_diff(cells.at("hct"), cells.at(other), a.n_boot, a.rope,
                                             a.seed, a.threads)});
        }
        auto out = open_out(dir, "bootstrap.csv");
        hct::write_bootstrap_csv(summaries, out);
    }
    {
        auto out = open_out(dir, "summary.csv");
        out << "strategy,mean_accuracy\n";
        for (const auto& [strategy, acc] : result.mean_accuracy) {
            out << strategy << ',' << hct::csv::num(acc) << '\n';
        }
    }

    Manifest m("crossval");
    m.set("ratings", a.data.ratings);
    m.set("machine", a.data.machine);
    m.set("truth", a.data.truth);
    if (!a.data.prob_ratings.empty()) m.set("prob-ratings", a.data.prob_ratings);
    m.set("name", a.data.name);
    m.set("repeats", a.repeats);
    m.set("folds", a.folds);
    m.set("n-boot", a.n_boot);
    m.set("rope", a.rope);
    m.set("seed", a.seed);
    m.set("threads", a.threads);
    m.set("out", a.out);
    m.write(dir);
    std::cout << "cross-validation written under " << dir.string() << '\n';
}

void add_dataset_options(CLI::App* cmd, DatasetArgs& a) {
    cmd->add_option("--ratings", a.ratings, "ratings.csv (case_id,rater_id,vote)");
    cmd->add_option("--machine", a.machine, "machine.csv (case_id,score)")->required();
    cmd->add_option("--truth", a.truth, "truth.csv (case_id,label)")->required();
    cmd->add_option("--prob-ratings", a.prob_ratings,
                    "optional probabilistic ratings (case_id,rater_id,prob), binarized at 50%");
    cmd->add_option("--name", a.name, "dataset name used in reports");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid confirmation tree: simulation and reanalysis toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI config / manifest file");

    GridArgs grid;
    auto* grid_cmd =
        app.add_subcommand("analytic-grid", "dominance regions over (p_h, p_m)")->configurable();
    grid_cmd->add_option("--resolution", grid.resolution, "cells per axis")->default_val(201);
    grid_cmd->add_option("--kappa-hh", grid.kappa_hh, "human-human dependence target");
    grid_cmd->add_option("--kappa-hm", grid.kappa_hm, "human-machine dependence target");
    grid_cmd->add_option("--threads", grid.threads, "worker threads");
    grid_cmd->add_option("--out", grid.out, "output directory")->required();

    SimulateArgs sim;
    auto* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo accuracy/cost estimates")->configurable();
    sim_cmd->add_option("--p-h", sim.p_h, "human accuracy");
    sim_cmd->add_option("--p-m", sim.p_m, "machine accuracy");
    sim_cmd->add_option("--kappa-hh", sim.kappa_hh, "human-human dependence target");
    sim_cmd->add_option("--kappa-hm", sim.kappa_hm, "human-machine dependence target");
    sim_cmd->add_option("--trials", sim.trials, "trials per strategy");
    sim_cmd->add_option("--seed", sim.seed, "RNG seed");
    sim_cmd->add_option("--threads", sim.threads, "worker threads");
    sim_cmd->add_option("--strategy", sim.strategy, "hct | majority | both")
        ->check(CLI::IsMember({"hct", "majority", "both"}));
    sim_cmd->add_option("--out", sim.out, "output directory")->required();

    SynthesizeArgs synth;
    auto* synth_cmd =
        app.add_subcommand("synthesize", "generate a synthetic labeled dataset")->configurable();
    synth_cmd->add_option("--cases", synth.cases, "number of cases");
    synth_cmd->add_option("--raters", synth.raters, "raters per case");
    synth_cmd->add_option("--base-rate", synth.base_rate, "positive-class rate");
    synth_cmd->add_option("--p-h", synth.p_h, "human accuracy");
    synth_cmd->add_option("--p-m", synth.p_m, "machine accuracy at threshold 0.5");
    synth_cmd->add_option("--kappa-hh", synth.kappa_hh, "human-human dependence target");
    synth_cmd->add_option("--kappa-hm", synth.kappa_hm, "human-machine dependence target");
    synth_cmd->add_option("--score-noise", synth.score_noise,
                          "score spread in (0=confident, 1=uniform over the half)");
    synth_cmd->add_option("--seed", synth.seed, "RNG seed");
    synth_cmd->add_option("--out", synth.out, "output directory")->required();

    ReanalyzeArgs re;
    auto* re_cmd = app.add_subcommand("reanalyze",
                                      "threshold sweep, ROC, kappa, crowd curve on a dataset")
                       ->configurable();
    add_dataset_options(re_cmd, re.data);
    re_cmd->add_option("--seed", re.seed, "RNG seed");
    re_cmd->add_option("--threads", re.threads, "worker threads");
    re_cmd->add_option("--k", re.k_majority, "majority group size");
    re_cmd->add_option("--max-perms", re.max_perms, "permutation cap per case");
    re_cmd->add_option("--min-shared", re.min_shared, "kappa pair shared-case floor");
    auto* crowd_opt =
        re_cmd->add_option("--crowd-sizes", re.crowd_sizes, "odd crowd sizes")->delimiter(',');
    re_cmd->add_option("--n-boot", re.n_boot, "bootstrap resamples");
    re_cmd->add_option("--rope", re.rope, "ROPE half-width");
    re_cmd->add_option("--out", re.out, "output directory")->required();

    KappaArgs kap;
    auto* kap_cmd =
        app.add_subcommand("kappa", "per-rater agreement table")->configurable();
    add_dataset_options(kap_cmd, kap.data);
    kap_cmd->add_option("--threshold", kap.threshold,
                        "machine binarization threshold (< 0 picks the accuracy-maximizing one)");
    kap_cmd->add_option("--min-shared", kap.min_shared, "pair shared-case floor");
    kap_cmd->add_option("--seed", kap.seed, "RNG seed");
    kap_cmd->add_option("--threads", kap.threads, "worker threads");
    kap_cmd->add_option("--out", kap.out, "output directory")->required();

    CrossvalArgs cv;
    auto* cv_cmd = app.add_subcommand("crossval",
                                      "repeated stratified CV with bootstrap summaries")
                       ->configurable();
    add_dataset_options(cv_cmd, cv.data);
    cv_cmd->add_option("--repeats", cv.repeats, "CV repetitions");
    cv_cmd->add_option("--folds", cv.folds, "folds per repetition");
    cv_cmd->add_option("--n-boot", cv.n_boot, "bootstrap resamples");
    cv_cmd->add_option("--rope", cv.rope, "ROPE half-width");
    cv_cmd->add_option("--seed", cv.seed, "RNG seed");
    cv_cmd->add_option("--threads", cv.threads, "worker threads");
    cv_cmd->add_option("--out", cv.out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);
    re.crowd_sizes_explicit = crowd_opt->count() > 0;

    try {
        if (grid_cmd->parsed()) run_grid(grid);
        if (sim_cmd->parsed()) run_simulate(sim);
        if (synth_cmd->parsed()) run_synthesize(synth);
        if (re_cmd->parsed()) run_reanalyze(re);
        if (kap_cmd->parsed()) run_kappa(kap);
        if (cv_cmd->parsed()) run_crossval(cv);
    } catch (const hct::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const hct::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const hct::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
