#pragma once

#include <stdexcept>
#include <string>

namespace hct {

// Bad inputs: out-of-range probabilities, malformed rows, mismatched sequences.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter combinations the generative mechanism cannot realize.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Leader accuracy of exactly 0 or 1 with a nonzero dependence target: the copy
// probability is undefined (its denominator 2*p_l*(1-p_l) vanishes).
class DegenerateLeaderError : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CSV ingestion failure modes, each named so callers and exit codes can tell them apart.
class CsvFormatError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DuplicateKeyError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ScoreRangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class LabelValueError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A stratum has fewer cases than requested folds.
class StratificationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// TPR/FPR requested on a truth set with no positives or no negatives.
class UndefinedRateError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace hct
