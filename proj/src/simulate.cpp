#include "hct/simulate.hpp"

#include <cmath>
#include <cstdio>

#include "hct/parallel.hpp"

namespace hct {

bool sample_follower(bool leader_correct, const CopyModel& m, RngStream& rng) {
    if (rng.bernoulli(m.alpha)) {
        return leader_correct;
    }
    return rng.bernoulli(m.p_prime);
}

namespace {

double bernoulli_stderr(double p_hat, std::uint64_t n) {
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

struct TrialOutcome {
    bool correct;
    bool extra_consult; // second (HCT) / third (majority) human was needed
};

// Correctness-space trial: two binary agents agree on the label exactly when
// their correctness matches, so accuracy and cost need no explicit labels.
template <class FirstPair, class TieBreak>
SimEstimate run_trials(const SimConfig& cfg, double cost_floor, FirstPair first_pair,
                       TieBreak tie_break) {
    if (cfg.n_trials == 0) {
        throw ValidationError("n_trials must be at least 1");
    }
    const std::size_t n_chunks =
        cfg.threads <= 1 ? 1 : static_cast<std::size_t>(cfg.threads);
    std::vector<std::uint64_t> correct(n_chunks, 0);
    std::vector<std::uint64_t> extra(n_chunks, 0);
    const std::uint64_t per_chunk = (cfg.n_trials + n_chunks - 1) / n_chunks;

    parallel_for(n_chunks, cfg.threads, [&](std::size_t chunk) {
        const std::uint64_t lo = chunk * per_chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(cfg.n_trials, lo + per_chunk);
        std::uint64_t n_correct = 0;
        std::uint64_t n_extra = 0;
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            RngStream rng(cfg.seed, trial);
            const auto [a_correct, b_correct] = first_pair(rng);
            TrialOutcome out;
            if (a_correct == b_correct) {
                out = {a_correct, false};
            } else {
                out = {tie_break(a_correct, rng), true};
            }
            n_correct += out.correct ? 1 : 0;
            n_extra += out.extra_consult ? 1 : 0;
        }
        correct[chunk] = n_correct;
        extra[chunk] = n_extra;
    });

    std::uint64_t n_correct = 0;
    std::uint64_t n_extra = 0;
    for (std::size_t i = 0; i < n_chunks; ++i) {
        n_correct += correct[i];
        n_extra += extra[i];
    }

    SimEstimate est;
    est.n_trials = cfg.n_trials;
    est.accuracy_mean = static_cast<double>(n_correct) / static_cast<double>(cfg.n_trials);
    const double extra_frac = static_cast<double>(n_extra) / static_cast<double>(cfg.n_trials);
    est.cost_mean = cost_floor + extra_frac;
    est.accuracy_stderr = bernoulli_stderr(est.accuracy_mean, cfg.n_trials);
    est.cost_stderr = bernoulli_stderr(extra_frac, cfg.n_trials);
    return est;
}

void validate_copy_model(const CopyModel& m, const char* link) {
    if (!(m.alpha >= 0.0 && m.alpha <= 1.0) || !(m.p_prime >= 0.0 && m.p_prime <= 1.0)) {
        throw InfeasibleError(std::string("copy model for ") + link +
                              " carries out-of-range alpha or p_prime");
    }
}

} // namespace

SimEstimate simulate_hct(const SimConfig& cfg) {
    if (const auto* ind = std::get_if<IndependentParams>(&cfg.params)) {
        const IndependentParams p = *ind;
        return run_trials(
            cfg, 1.0,
            [p](RngStream& rng) {
                const bool h1 = rng.bernoulli(p.p_h);
                const bool machine = rng.bernoulli(p.p_m);
                return std::pair{h1, machine};
            },
            [p](bool, RngStream& rng) { return rng.bernoulli(p.p_h); });
    }
    const auto& corr = std::get<CorrelatedTreeParams>(cfg.params);
    validate_copy_model(corr.hm, "human-machine");
    validate_copy_model(corr.hh, "human-human");
    return run_trials(
        cfg, 1.0,
        [&corr](RngStream& rng) {
            const bool h1 = rng.bernoulli(corr.p_h1);
            const bool machine = sample_follower(h1, corr.hm, rng);
            return std::pair{h1, machine};
        },
        // The tiebreaking human follows the leader H1, not the machine.
        [&corr](bool h1_correct, RngStream& rng) {
            return sample_follower(h1_correct, corr.hh, rng);
        });
}

SimEstimate simulate_majority(const SimConfig& cfg) {
    if (const auto* ind = std::get_if<IndependentParams>(&cfg.params)) {
        const double p_h = ind->p_h;
        return run_trials(
            cfg, 2.0,
            [p_h](RngStream& rng) {
                return std::pair{rng.bernoulli(p_h), rng.bernoulli(p_h)};
            },
            [p_h](bool, RngStream& rng) { return rng.bernoulli(p_h); });
    }
    const auto& corr = std::get<CorrelatedTreeParams>(cfg.params);
    validate_copy_model(corr.hh, "human-human");
    return run_trials(
        cfg, 2.0,
        [&corr](RngStream& rng) {
            const bool h1 = rng.bernoulli(corr.p_h1);
            const bool h2 = sample_follower(h1, corr.hh, rng);
            return std::pair{h1, h2};
        },
        // H3 follows the leader H1, which is the first element of the pair.
        [&corr](bool h1_correct, RngStream& rng) {
            return sample_follower(h1_correct, corr.hh, rng);
        });
}

LatentCopyRates solve_latent_copy_rates(double p_h, double p_m, double kappa_hh,
                                        double kappa_hm) {
    // Validate the targets through the pairwise inversion first; this surfaces the
    // standard infeasibility reports (and rejects negative kappa).
    const CopySolve hh = solve_copy_model(p_h, p_h, kappa_hh);
    const CopySolve hm = solve_copy_model(p_h, p_m, kappa_hm);
    const double alpha_hh = hh.value().alpha; // equals kappa_hh when p_l == p_f
    const double alpha_hm = hm.value().alpha;

    LatentCopyRates rates;
    // Two followers of one latent leader with copy rates a and b show excess
    // agreement 2*a*b*p_l*(1-p_l); with a == b the pairwise kappa is a^2 when
    // marginals match the leader. Taking sqrt makes every rater pair (not just
    // leader-follower pairs) land on the target.
    rates.rater_alpha = std::sqrt(alpha_hh);
    if (alpha_hm == 0.0) {
        rates.machine_alpha = 0.0;
    } else if (rates.rater_alpha == 0.0) {
        throw InfeasibleError(
            "kappa_hm > 0 with kappa_hh = 0 is not realizable through a shared latent "
            "leader; raise kappa_hh or drop kappa_hm to 0");
    } else {
        rates.machine_alpha = alpha_hm / rates.rater_alpha;
    }
    if (rates.machine_alpha > 1.0) {
        InfeasibilityReport rep{InfeasibilityReport::Bound::alpha_above_one,
                                rates.machine_alpha, 0.0};
        throw InfeasibleError("machine latent copy rate: " + rep.describe());
    }
    if (rates.machine_alpha == 1.0) {
        rates.machine_p_prime = p_m;
    } else {
        rates.machine_p_prime = (p_m - rates.machine_alpha * p_h) / (1.0 - rates.machine_alpha);
    }
    if (!(rates.machine_p_prime >= 0.0 && rates.machine_p_prime <= 1.0)) {
        InfeasibilityReport rep{InfeasibilityReport::Bound::p_prime_out_of_range,
                                rates.machine_alpha, rates.machine_p_prime};
        throw InfeasibleError("machine latent draw rate: " + rep.describe());
    }
    return rates;
}

Dataset synthesize_dataset(const SynthesisSpec& spec) {
    if (spec.n_cases == 0) {
        throw ValidationError("n_cases must be at least 1");
    }
    if (spec.n_raters < 1) {
        throw ValidationError("n_raters must be at least 1");
    }
    for (const auto& [v, name] :
         {std::pair{spec.base_rate, "base_rate"}, std::pair{spec.p_h, "p_h"},
          std::pair{spec.p_m, "p_m"}}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string(name) + " must lie in [0,1]");
        }
    }
    if (!(spec.machine_score_noise >= 0.0 && spec.machine_score_noise <= 1.0)) {
        throw ValidationError("machine_score_noise must lie in [0,1]");
    }

    const LatentCopyRates rates =
        solve_latent_copy_rates(spec.p_h, spec.p_m, spec.kappa_hh, spec.kappa_hm);
    const CopyModel rater_link{spec.p_h, spec.p_h, 0.0, rates.rater_alpha, spec.p_h};
    const CopyModel machine_link{spec.p_h, spec.p_m, 0.0, rates.machine_alpha,
                                 rates.machine_p_prime};

    Dataset ds;
    ds.name = "synthetic";
    ds.cases.resize(spec.n_cases);

    char buf[32];
    for (std::size_t c = 0; c < spec.n_cases; ++c) {
        RngStream rng(spec.seed, c);
        CaseRecord& rec = ds.cases[c];
        std::snprintf(buf, sizeof(buf), "case%06zu", c);
        rec.case_id = buf;
        const bool positive_case = rng.bernoulli(spec.base_rate);
        rec.truth = positive_case ? Label::positive : Label::negative;

        const bool leader_correct = rng.bernoulli(spec.p_h);
        for (int r = 0; r < spec.n_raters; ++r) {
            const bool correct = sample_follower(leader_correct, rater_link, rng);
            std::snprintf(buf, sizeof(buf), "r%04d", r);
            rec.human_votes.emplace(buf, correct ? rec.truth : flipped(rec.truth));
        }

        const bool machine_correct = sample_follower(leader_correct, machine_link, rng);
        const Label machine_label = machine_correct ? rec.truth : flipped(rec.truth);
        // Score lands strictly on the label's side of 0.5 (equality counts as
        // positive): positive labels in [0.5, 1], negative labels in [0, 0.5).
        const double conf =
            (1.0 - spec.machine_score_noise) + spec.machine_score_noise * (1.0 - rng.next_unit());
        rec.machine_score = machine_label == Label::positive ? 0.5 + 0.5 * conf
                                                             : 0.5 - 0.5 * conf;
    }
    return ds;
}

} // namespace hct
