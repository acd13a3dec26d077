#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace blockent {

// One randomized self-verification suite: trials run, failures seen, and the
// worst observed margin (suite-specific, reported for diagnostics).
struct SuiteResult {
    std::string name;
    long trials = 0;
    long failures = 0;
    double worst = 0;
    std::string detail;
};

// The randomized invariants behind the `verify` command: the superposition
// difference identity (direct vs closed form and nonnegativity), the qudit
// generalization, decomposition stripping never increasing the average, the
// negativity block additivity, and convergence of the sampled roof to the
// exact two-qubit value on Werner states. Deterministic for a fixed seed.
std::vector<SuiteResult> run_verification(long trials, std::uint64_t seed);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace blockent
