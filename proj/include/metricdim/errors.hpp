#pragma once

#include <stdexcept>
#include <string>

namespace metricdim {

struct SymmetryViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneratePair : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidDistance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidRatio : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MetricMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidExponents : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ScaleTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OracleTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidResolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PartitionBroken : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedMeasure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Local-comparability hypothesis of the refinement step failed; carries the
// witness pair so callers can surface it.
struct HypothesisViolation : std::runtime_error {
    int level;
    int first;
    int second;
    HypothesisViolation(const std::string& msg, int level_, int a, int b)
        : std::runtime_error(msg), level(level_), first(a), second(b) {}
};

}  // namespace metricdim
