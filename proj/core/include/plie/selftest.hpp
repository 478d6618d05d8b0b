#pragma once

#include <string>
#include <vector>

#include "plie/explog.hpp"

namespace plie {

// The acceptance suite: every quantitative contract of the library run at
// desk scale against independent oracles, with fixed seeds and exact
// (zero-tolerance) ultrametric comparisons. `plie selftest` and the
// acceptance test binary both drive this engine.
struct SelftestOptions {
    std::uint64_t prime = 5;
    int precision = 24;  // working precision N = 2M + 4
    int target = 10;     // target precision M
    std::uint64_t seed = 7;
    // Sample-count multiplier for quick smoke runs. The acceptance gate
    // always runs at 1.0.
    double scale = 1.0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace plie
