#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hct/errors.hpp"

namespace hct {

// The two possible choices. Serialized as 0/1 everywhere.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

constexpr Label flipped(Label l) noexcept {
    return l == Label::positive ? Label::negative : Label::positive;
}

constexpr int to_int(Label l) noexcept { return l == Label::positive ? 1 : 0; }

Label label_from_int(int v); // throws LabelValueError unless v is 0 or 1

// Operating point for turning a machine probability score into a label.
// The sentinels force one label regardless of score, so the hierarchy/polyarchy
// equivalences at the threshold extremes hold even for scores of exactly 0 or 1.
struct Threshold {
    enum class Kind : std::uint8_t { all_positive, interior, all_negative };

    Kind kind = Kind::interior;
    double value = 0.5; // meaningful only for interior

    static Threshold all_positive() noexcept { return {Kind::all_positive, 0.0}; }
    static Threshold all_negative() noexcept { return {Kind::all_negative, 1.0}; }
    static Threshold interior(double t); // throws ValidationError outside [0,1]
};

// Total order: all_positive < interior(t), ascending in t < all_negative.
bool operator<(const Threshold& a, const Threshold& b) noexcept;
bool operator==(const Threshold& a, const Threshold& b) noexcept;
inline bool operator!=(const Threshold& a, const Threshold& b) noexcept { return !(a == b); }

std::string to_string(const Threshold& t);

// Outcome of one sequential decision, with the consultation count that drives cost.
struct DecisionTrace {
    Label decision;
    int humans_consulted;
    bool agreed_first_stage;
};

struct CaseRecord {
    std::string case_id;
    Label truth = Label::negative;
    std::map<std::string, Label> human_votes; // rater id -> vote, unique per case
    double machine_score = 0.0;               // probability of the positive class

    std::size_t n_raters() const noexcept { return human_votes.size(); }
    std::size_t n_positive_votes() const noexcept;
};

struct Dataset {
    std::string name;
    std::vector<CaseRecord> cases;

    // Checks case id uniqueness and machine score range; throws on violation.
    void validate() const;
};

} // namespace hct
