#include "hct/types.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace hct {

Label label_from_int(int v) {
    if (v == 0) return Label::negative;
    if (v == 1) return Label::positive;
    throw LabelValueError("label must be 0 or 1, got " + std::to_string(v));
}

Threshold Threshold::interior(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw ValidationError("interior threshold must lie in [0,1], got " + std::to_string(t));
    }
    return {Kind::interior, t};
}

static int kind_rank(Threshold::Kind k) noexcept {
    switch (k) {
    case Threshold::Kind::all_positive: return 0;
    case Threshold::Kind::interior: return 1;
    case Threshold::Kind::all_negative: return 2;
    }
    return 1;
}

bool operator<(const Threshold& a, const Threshold& b) noexcept {
    const int ra = kind_rank(a.kind);
    const int rb = kind_rank(b.kind);
    if (ra != rb) return ra < rb;
    if (a.kind == Threshold::Kind::interior) return a.value < b.value;
    return false;
}

bool operator==(const Threshold& a, const Threshold& b) noexcept {
    if (a.kind != b.kind) return false;
    if (a.kind != Threshold::Kind::interior) return true;
    return a.value == b.value;
}

std::string to_string(const Threshold& t) {
    switch (t.kind) {
    case Threshold::Kind::all_positive: return "all_positive";
    case Threshold::Kind::all_negative: return "all_negative";
    case Threshold::Kind::interior: {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "interior(%.17g)", t.value);
        return buf;
    }
    }
    return "?";
}

std::size_t CaseRecord::n_positive_votes() const noexcept {
    std::size_t k = 0;
    for (const auto& [rater, vote] : human_votes) {
        (void)rater;
        if (vote == Label::positive) ++k;
    }
    return k;
}

void Dataset::validate() const {
    std::set<std::string> ids;
    for (const auto& c : cases) {
        if (!ids.insert(c.case_id).second) {
            throw DuplicateKeyError("duplicate case_id '" + c.case_id + "' in dataset '" + name + "'");
        }
        if (!(c.machine_score >= 0.0 && c.machine_score <= 1.0)) {
            throw ScoreRangeError("machine score out of [0,1] for case '" + c.case_id + "': " +
                                  std::to_string(c.machine_score));
        }
    }
}

} // namespace hct
