#pragma once

#include <concepts>
#include <utility>

#include "hct/types.hpp"

namespace hct {

// positive iff score >= t for interior thresholds; sentinels ignore the score.
// Throws ValidationError if score is outside [0,1].
Label binarize(double score, const Threshold& threshold);

// One human and the machine decide independently; agreement is final, disagreement
// consults a second human. The supplier is invoked only on disagreement, so cost
// accounting can observe actual consultations.
template <std::invocable<> F>
DecisionTrace hct_decide(Label h1, Label machine, F&& h2_supplier) {
    if (h1 == machine) {
        return {h1, 1, true};
    }
    return {std::forward<F>(h2_supplier)(), 2, false};
}

// Sequential three-person majority: the third voter breaks first-pair ties only.
template <std::invocable<> F>
DecisionTrace majority_decide(Label h1, Label h2, F&& h3_supplier) {
    if (h1 == h2) {
        return {h1, 2, true};
    }
    return {std::forward<F>(h3_supplier)(), 3, false};
}

// Two-person hierarchy: positive only on unanimous positives.
constexpr Label hierarchy_decide(Label h1, Label h2) noexcept {
    return (h1 == Label::positive && h2 == Label::positive) ? Label::positive : Label::negative;
}

// Two-person polyarchy: one positive suffices.
constexpr Label polyarchy_decide(Label h1, Label h2) noexcept {
    return (h1 == Label::positive || h2 == Label::positive) ? Label::positive : Label::negative;
}

} // namespace hct
