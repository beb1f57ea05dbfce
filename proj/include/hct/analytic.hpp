#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hct/errors.hpp"

namespace hct {

// ---------------------------------------------------------------------------
// Independent decisions
// ---------------------------------------------------------------------------

struct IndependentParams {
    double p_h = 0.5; // human accuracy
    double p_m = 0.5; // machine accuracy
};

// P(correct final decision) of the confirmation tree under independence:
// both right, or a tie broken correctly by the second human.
double hct_accuracy_indep(const IndependentParams& p);

// Expected humans consulted: 2 minus the probability the first human and the
// machine independently agree. Always in [1,2].
double hct_cost_indep(const IndependentParams& p);

// Three-person sequential majority accuracy under independence.
double maj_accuracy_indep(double p_h);

// Expected humans consulted by the sequential majority. Always in [2,3].
double maj_cost_indep(double p_h);

// k-person simple majority accuracy for odd k and independent voters.
// Throws ValidationError for even or non-positive k.
double maj_accuracy_k(int k, double p_h);

// ---------------------------------------------------------------------------
// Opinion-leader dependence
// ---------------------------------------------------------------------------

// A follower copies the leader's label with probability alpha and otherwise draws
// independently with success rate p_prime. (alpha, p_prime) are solved so the pair
// hits a target Cohen's kappa while the follower keeps marginal accuracy p_f.
struct CopyModel {
    double p_l = 0.5;     // leader accuracy
    double p_f = 0.5;     // follower marginal accuracy
    double kappa = 0.0;   // target agreement beyond chance
    double alpha = 0.0;   // copy probability
    double p_prime = 0.5; // independent draw rate

    bool pure_copy() const noexcept { return alpha >= 1.0; }
};

struct InfeasibilityReport {
    enum class Bound : int { alpha_negative, alpha_above_one, p_prime_out_of_range };

    Bound bound = Bound::alpha_above_one;
    double alpha = 0.0;   // the value the inversion produced
    double p_prime = 0.0; // defined for p_prime_out_of_range only

    std::string describe() const;
};

// Either a feasible CopyModel or the report naming the violated bound.
class CopySolve {
public:
    static CopySolve feasible(CopyModel m) {
        CopySolve s;
        s.model_ = m;
        return s;
    }
    static CopySolve infeasible(InfeasibilityReport r) {
        CopySolve s;
        s.report_ = r;
        return s;
    }

    bool ok() const noexcept { return model_.has_value(); }

    // Throws InfeasibleError when the solve failed.
    const CopyModel& value() const;

    const InfeasibilityReport& report() const { return *report_; }

private:
    std::optional<CopyModel> model_;
    std::optional<InfeasibilityReport> report_;
};

// Inverts (p_l, p_f, kappa) -> (alpha, p_prime). Negative kappa and targets that
// push alpha or p_prime outside [0,1] come back as infeasibility reports; a leader
// with accuracy exactly 0 or 1 combined with kappa != 0 throws DegenerateLeaderError.
CopySolve solve_copy_model(double p_l, double p_f, double kappa);

// P(follower correct | leader outcome).
double follower_correct_given_leader(const CopyModel& m, bool leader_correct);

// Confirmation-tree parameters with leader human H1, machine follower (hm link)
// and tie-breaking human follower (hh link). Both links must share p_l == p_h1.
struct CorrelatedTreeParams {
    double p_h1 = 0.5;
    CopyModel hm;
    CopyModel hh;
};

double hct_accuracy_corr(const CorrelatedTreeParams& p);
double hct_cost_corr(const CorrelatedTreeParams& p);

// Majority of three humans where H2 and H3 both follow H1 through the same link.
double maj_accuracy_corr(double p_h, const CopyModel& hh);
double maj_cost_corr(double p_h, const CopyModel& hh);

// ---------------------------------------------------------------------------
// Dominance regions
// ---------------------------------------------------------------------------

enum class RegionLabel : int {
    beats_majority_only,
    beats_machine_only,
    beats_both,
    beats_neither,
};

const char* region_name(RegionLabel r) noexcept;

// Compares the correlated confirmation tree against the correlated majority vote
// and the machine alone. "Beats" requires strict inequality; ties fall to the
// non-tree side. nullopt marks (kappa, accuracy) combinations the copy mechanism
// cannot realize, including degenerate leaders with nonzero kappa.
std::optional<RegionLabel> classify_region(double p_h, double p_m, double kappa_hh,
                                           double kappa_hm);

struct RegionGrid {
    int resolution = 0;
    double kappa_hh = 0.0;
    double kappa_hm = 0.0;
    // Row-major: cell(i, j) covers p_h = i/(res-1), p_m = j/(res-1).
    std::vector<std::optional<RegionLabel>> cells;

    double axis_value(int i) const noexcept {
        return static_cast<double>(i) / static_cast<double>(resolution - 1);
    }
    const std::optional<RegionLabel>& at(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * resolution + j];
    }
};

// Evaluates classify_region on a uniform lattice over [0,1]^2.
// Throws ValidationError for resolution < 2. Results are identical for any
// thread count (cells are pure functions written to disjoint slots).
RegionGrid generate_region_grid(int resolution, double kappa_hh, double kappa_hm,
                                int threads = 1);

struct RegionAreaSummary {
    long long feasible_cells = 0;
    long long infeasible_cells = 0;
    long long count[4] = {0, 0, 0, 0}; // indexed by RegionLabel

    double feasible_fraction(RegionLabel r) const noexcept {
        return feasible_cells == 0
                   ? 0.0
                   : static_cast<double>(count[static_cast<int>(r)]) / feasible_cells;
    }
};

RegionAreaSummary summarize_region_grid(const RegionGrid& grid);

// CSV columns: p_h,p_m,kappa_hh,kappa_hm,region
void write_region_grid_csv(const RegionGrid& grid, std::ostream& out);

} // namespace hct
