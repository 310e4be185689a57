#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace apds {

struct SelfcheckOptions {
    uint64_t seed = 1;
    uint64_t iters = 20;   // random inputs per suite
    uint64_t max_n = 512;  // largest generated input
    // Test hook: the sequence suite reports rank + 1 from ApSequence, so the
    // run must fail with a counterexample.
    bool inject_fault = false;
};

struct SuiteResult {
    std::string name;
    uint64_t cases = 0;
    uint64_t checks = 0;
    uint64_t failures = 0;
    // first failure, shrunk to a small input where the suite allows it
    std::string counterexample;

    bool ok() const { return failures == 0; }
};

// Property suites against naive oracles: sequences (ApSequence, PolySequence,
// LargeSequence, BlockStore), permutations, functions, disjoint sets, the
// FM index, and serialization round trips. Every query is checked
// exhaustively on each generated input.
std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options);

}  // namespace apds
