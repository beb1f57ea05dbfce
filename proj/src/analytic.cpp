#include "hct/analytic.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "hct/csv.hpp"
#include "hct/parallel.hpp"

namespace hct {

namespace {

void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
}

constexpr double kConsistencyTol = 1e-12;

} // namespace

double hct_accuracy_indep(const IndependentParams& p) {
    require_probability(p.p_h, "p_h");
    require_probability(p.p_m, "p_m");
    const double ph = p.p_h;
    const double pm = p.p_m;
    return ph * pm + ph * (1.0 - pm) * ph + (1.0 - ph) * pm * ph;
}

double hct_cost_indep(const IndependentParams& p) {
    require_probability(p.p_h, "p_h");
    require_probability(p.p_m, "p_m");
    const double agree = p.p_h * p.p_m + (1.0 - p.p_h) * (1.0 - p.p_m);
    return 2.0 - agree;
}

double maj_accuracy_indep(double p_h) {
    require_probability(p_h, "p_h");
    return p_h * p_h + p_h * (1.0 - p_h) * p_h + (1.0 - p_h) * p_h * p_h;
}

double maj_cost_indep(double p_h) {
    require_probability(p_h, "p_h");
    return 3.0 - (p_h * p_h + (1.0 - p_h) * (1.0 - p_h));
}

double maj_accuracy_k(int k, double p_h) {
    if (k < 1 || k % 2 == 0) {
        throw ValidationError("majority size must be a positive odd integer, got " +
                              std::to_string(k));
    }
    require_probability(p_h, "p_h");
    // P(at least ceil(k/2) of k independent voters correct), summed from the top
    // with exact binomial coefficients.
    const int need = k / 2 + 1;
    double total = 0.0;
    double coeff = 1.0; // C(k, j), updated incrementally from j = k downward
    for (int j = k; j >= need; --j) {
        total += coeff * std::pow(p_h, j) * std::pow(1.0 - p_h, k - j);
        coeff = coeff * j / static_cast<double>(k - j + 1);
    }
    return total;
}

std::string InfeasibilityReport::describe() const {
    char buf[160];
    switch (bound) {
    case Bound::alpha_negative:
        std::snprintf(buf, sizeof(buf),
                      "infeasible: copy probability alpha=%.6g is negative "
                      "(the copy mechanism cannot produce kappa < 0)",
                      alpha);
        break;
    case Bound::alpha_above_one:
        std::snprintf(buf, sizeof(buf),
                      "infeasible: copy probability alpha=%.6g exceeds 1 "
                      "(kappa too high for the accuracy gap)",
                      alpha);
        break;
    case Bound::p_prime_out_of_range:
        std::snprintf(buf, sizeof(buf),
                      "infeasible: independent draw rate p_prime=%.6g lies outside [0,1] "
                      "(alpha=%.6g)",
                      p_prime, alpha);
        break;
    }
    return buf;
}

const CopyModel& CopySolve::value() const {
    if (!model_) {
        throw InfeasibleError(report_->describe());
    }
    return *model_;
}

CopySolve solve_copy_model(double p_l, double p_f, double kappa) {
    require_probability(p_l, "p_l");
    require_probability(p_f, "p_f");
    if (!(kappa >= -1.0 && kappa <= 1.0)) {
        throw ValidationError("kappa must lie in [-1,1], got " + std::to_string(kappa));
    }

    if (kappa == 0.0) {
        // Fully independent follower.
        return CopySolve::feasible({p_l, p_f, kappa, 0.0, p_f});
    }
    if (p_l <= 0.0 || p_l >= 1.0) {
        throw DegenerateLeaderError(
            "leader accuracy of exactly 0 or 1 admits only kappa = 0 "
            "(2*p_l*(1-p_l) vanishes)");
    }

    // alpha = kappa * (1 - p_e) / (2 p_l (1 - p_l)) with p_e from the marginals.
    const double one_minus_pe = p_l * (1.0 - p_f) + (1.0 - p_l) * p_f;
    const double alpha = kappa * one_minus_pe / (2.0 * p_l * (1.0 - p_l));

    if (alpha < 0.0) {
        return CopySolve::infeasible({InfeasibilityReport::Bound::alpha_negative, alpha, 0.0});
    }
    if (alpha > 1.0) {
        return CopySolve::infeasible({InfeasibilityReport::Bound::alpha_above_one, alpha, 0.0});
    }
    if (alpha == 1.0) {
        // p_prime is undefined (the follower never draws); only an exact marginal
        // match is realizable. p_prime is set to p_f by convention and never used.
        if (std::abs(p_f - p_l) > kConsistencyTol) {
            return CopySolve::infeasible(
                {InfeasibilityReport::Bound::p_prime_out_of_range, alpha,
                 std::numeric_limits<double>::quiet_NaN()});
        }
        return CopySolve::feasible({p_l, p_f, kappa, alpha, p_f});
    }

    const double p_prime = (p_f - alpha * p_l) / (1.0 - alpha);
    if (!(p_prime >= 0.0 && p_prime <= 1.0)) {
        return CopySolve::infeasible(
            {InfeasibilityReport::Bound::p_prime_out_of_range, alpha, p_prime});
    }
    return CopySolve::feasible({p_l, p_f, kappa, alpha, p_prime});
}

double follower_correct_given_leader(const CopyModel& m, bool leader_correct) {
    const double indep = (1.0 - m.alpha) * m.p_prime;
    return leader_correct ? m.alpha + indep : indep;
}

namespace {

void require_consistent_leader(const CorrelatedTreeParams& p) {
    if (std::abs(p.hm.p_l - p.p_h1) > kConsistencyTol ||
        std::abs(p.hh.p_l - p.p_h1) > kConsistencyTol) {
        throw ValidationError("correlated tree links must share the leader accuracy p_h1");
    }
}

} // namespace

double hct_accuracy_corr(const CorrelatedTreeParams& p) {
    require_consistent_leader(p);
    const double q_hm = follower_correct_given_leader(p.hm, true);
    const double r_hm = follower_correct_given_leader(p.hm, false);
    const double q_hh = follower_correct_given_leader(p.hh, true);
    const double r_hh = follower_correct_given_leader(p.hh, false);
    // Three success scenarios: leader+machine right; leader right, machine wrong,
    // tiebreaker right; leader wrong, machine right, tiebreaker right.
    return p.p_h1 * q_hm + p.p_h1 * (1.0 - q_hm) * q_hh + (1.0 - p.p_h1) * r_hm * r_hh;
}

double hct_cost_corr(const CorrelatedTreeParams& p) {
    require_consistent_leader(p);
    const double q_hm = follower_correct_given_leader(p.hm, true);
    const double r_hm = follower_correct_given_leader(p.hm, false);
    // Agreement = both correct or both incorrect, conditioned on the leader.
    const double agree = p.p_h1 * q_hm + (1.0 - p.p_h1) * (1.0 - r_hm);
    return 2.0 - agree;
}

double maj_accuracy_corr(double p_h, const CopyModel& hh) {
    if (std::abs(hh.p_l - p_h) > kConsistencyTol) {
        throw ValidationError("majority followers must share the leader accuracy p_h");
    }
    const double q = follower_correct_given_leader(hh, true);
    const double r = follower_correct_given_leader(hh, false);
    return p_h * q + p_h * (1.0 - q) * q + (1.0 - p_h) * r * r;
}

double maj_cost_corr(double p_h, const CopyModel& hh) {
    if (std::abs(hh.p_l - p_h) > kConsistencyTol) {
        throw ValidationError("majority followers must share the leader accuracy p_h");
    }
    const double q = follower_correct_given_leader(hh, true);
    const double r = follower_correct_given_leader(hh, false);
    const double agree = p_h * q + (1.0 - p_h) * (1.0 - r);
    return 3.0 - agree;
}

const char* region_name(RegionLabel r) noexcept {
    switch (r) {
    case RegionLabel::beats_majority_only: return "beats_majority_only";
    case RegionLabel::beats_machine_only: return "beats_machine_only";
    case RegionLabel::beats_both: return "beats_both";
    case RegionLabel::beats_neither: return "beats_neither";
    }
    return "?";
}

std::optional<RegionLabel> classify_region(double p_h, double p_m, double kappa_hh,
                                           double kappa_hm) {
    CopySolve hm;
    CopySolve hh;
    try {
        hm = solve_copy_model(p_h, p_m, kappa_hm);
        hh = solve_copy_model(p_h, p_h, kappa_hh);
    } catch (const DegenerateLeaderError&) {
        // A leader at accuracy 0 or 1 cannot carry any dependence; per-cell
        // feasibility treats these targets as unrealizable.
        return std::nullopt;
    }
    if (!hm.ok() || !hh.ok()) {
        return std::nullopt;
    }

    const CorrelatedTreeParams tree{p_h, hm.value(), hh.value()};
    const double pi_hct = hct_accuracy_corr(tree);
    const double pi_maj = maj_accuracy_corr(p_h, hh.value());

    const bool beats_maj = pi_hct > pi_maj;
    const bool beats_machine = pi_hct > p_m;
    if (beats_maj && beats_machine) return RegionLabel::beats_both;
    if (beats_maj) return RegionLabel::beats_majority_only;
    if (beats_machine) return RegionLabel::beats_machine_only;
    return RegionLabel::beats_neither;
}

RegionGrid generate_region_grid(int resolution, double kappa_hh, double kappa_hm,
                                int threads) {
    if (resolution < 2) {
        throw ValidationError("grid resolution must be at least 2, got " +
                              std::to_string(resolution));
    }
    RegionGrid grid;
    grid.resolution = resolution;
    grid.kappa_hh = kappa_hh;
    grid.kappa_hm = kappa_hm;
    grid.cells.resize(static_cast<std::size_t>(resolution) * resolution);

    const std::size_t n = grid.cells.size();
    parallel_for(n, threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / resolution;
        const int j = static_cast<int>(idx) % resolution;
        grid.cells[idx] =
            classify_region(grid.axis_value(i), grid.axis_value(j), kappa_hh, kappa_hm);
    });
    return grid;
}

RegionAreaSummary summarize_region_grid(const RegionGrid& grid) {
    RegionAreaSummary s;
    for (const auto& cell : grid.cells) {
        if (!cell) {
            ++s.infeasible_cells;
        } else {
            ++s.feasible_cells;
            ++s.count[static_cast<int>(*cell)];
        }
    }
    return s;
}

void write_region_grid_csv(const RegionGrid& grid, std::ostream& out) {
    out << "p_h,p_m,kappa_hh,kappa_hm,region\n";
    for (int i = 0; i < grid.resolution; ++i) {
        for (int j = 0; j < grid.resolution; ++j) {
            const auto& cell = grid.at(i, j);
            out << csv::num(grid.axis_value(i)) << ',' << csv::num(grid.axis_value(j)) << ','
                << csv::num(grid.kappa_hh) << ',' << csv::num(grid.kappa_hm) << ','
                << (cell ? region_name(*cell) : "infeasible") << '\n';
        }
    }
}

} // namespace hct
