#pragma once

#include <string>
#include <vector>

#include "latdist/io.hpp"

namespace latdist {

// One verified property. `margin` is the slack left before the threshold
// would trip (negative when failing). Invariants marked expected_failure
// assert that a property is violated (the comparison operators are
// non-additive by construction); for those, pass means the violation is
// present with the required margin.
struct InvariantResult {
    std::string name;
    bool pass = false;
    bool expected_failure = false;
    double measured = 0.0;
    double threshold = 0.0;
    double margin = 0.0;
    std::string details;
    std::string replay_json;  // offending inputs, filled only on failure
};

// Runs every invariant of the algebra and distance modules at the configured
// size and trial count. Deterministic for a fixed config.
std::vector<InvariantResult> run_invariant_suite(const VerifyConfig& cfg);

}  // namespace latdist
