#pragma once

#include <cstdint>
#include <variant>

#include "hct/analytic.hpp"
#include "hct/rng.hpp"
#include "hct/types.hpp"

namespace hct {

struct SimConfig {
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
    std::variant<IndependentParams, CorrelatedTreeParams> params;
    int threads = 1;
};

struct SimEstimate {
    double accuracy_mean = 0.0;
    double cost_mean = 0.0;
    double accuracy_stderr = 0.0;
    double cost_stderr = 0.0;
    std::uint64_t n_trials = 0;
};

// One follower draw: copy the leader's outcome with probability alpha, otherwise
// an independent Bernoulli(p_prime) draw.
bool sample_follower(bool leader_correct, const CopyModel& m, RngStream& rng);

// Monte Carlo oracle for the confirmation tree. Each trial draws agent
// correctness from its own (seed, trial) stream, so estimates are bit-identical
// for any thread count.
SimEstimate simulate_hct(const SimConfig& cfg);

// Monte Carlo oracle for the sequential three-person majority.
SimEstimate simulate_majority(const SimConfig& cfg);

// Synthetic dataset generation. Raters are exchangeable followers of a latent
// leader in correctness space; kappa targets are hit by calibrating the latent
// copy rates so that every measured human-human pair converges to kappa_hh and
// every human-machine pair to kappa_hm. Machine scores land on the correct side
// of 0.5 by construction, so thresholding at 0.5 reproduces accuracy p_m.
struct SynthesisSpec {
    std::size_t n_cases = 0;
    int n_raters = 0;
    double base_rate = 0.5;
    double p_h = 0.5;
    double p_m = 0.5;
    double kappa_hh = 0.0;
    double kappa_hm = 0.0;
    // 0 gives fully confident scores (0 or 1 only); 1 spreads scores uniformly
    // over the half matching the machine's label.
    double machine_score_noise = 1.0;
    std::uint64_t seed = 0;
};

Dataset synthesize_dataset(const SynthesisSpec& spec);

// The latent copy rates used by synthesize_dataset, exposed for closed-loop tests.
struct LatentCopyRates {
    double rater_alpha = 0.0;    // per-rater copy rate; pairwise human kappa = rater_alpha^2
    double machine_alpha = 0.0;  // machine copy rate
    double machine_p_prime = 0.0;
};

LatentCopyRates solve_latent_copy_rates(double p_h, double p_m, double kappa_hh,
                                        double kappa_hm);

} // namespace hct
