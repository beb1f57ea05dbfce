#include "hct/core.hpp"

#include <string>

namespace hct {

Label binarize(double score, const Threshold& threshold) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw ValidationError("machine score out of [0,1]: " + std::to_string(score));
    }
    switch (threshold.kind) {
    case Threshold::Kind::all_positive: return Label::positive;
    case Threshold::Kind::all_negative: return Label::negative;
    case Threshold::Kind::interior:
        return score >= threshold.value ? Label::positive : Label::negative;
    }
    return Label::negative;
}

} // namespace hct
