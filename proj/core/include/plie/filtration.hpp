#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plie/chart.hpp"

namespace plie {

// One audited inequality instance that failed, with everything needed to
// replay it: the sample substream index plus the concrete operands.
struct FiltrationWitness {
    std::uint64_t sample_index = 0;
    ChartVector x;
    ChartVector y;
    long n = 0;
    long lhs_bound = 0;
    bool lhs_floored = false;
    long rhs = 0;
};

struct FiltrationCheck {
    std::string name;
    std::string statement;  // the exponent inequality, human readable
    long samples = 0;
    long passes = 0;
    long floor_passes = 0;  // vanished difference, pass with annotation
    std::optional<FiltrationWitness> counterexample;

    bool passed() const { return !counterexample.has_value(); }
};

struct FiltrationReport {
    std::string group;
    std::uint64_t prime = 0;
    int precision = 0;
    std::uint64_t seed = 0;
    long samples = 0;
    std::vector<FiltrationCheck> checks;

    bool all_passed() const;
};

// Samples random x, y in the chart ball and random n in [-p^3, p^3] and
// checks, exactly on integer norm exponents:
//
//   1. e(x*y)           >= min(e(x), e(y))     (ball closure / ultrametric)
//   2. e(inv(x) + x)    >= 2 e(x)              (inversion is -id to second order)
//   3. e(x*y - x - y)   >= e(x) + e(y)         (multiplication is + to second order)
//   4. e([x,y])         >= e(x) + e(y)         (commutator filtration)
//   5. e(x^n - n x)     >= 2 e(x)              (integer powers to second order)
//
// The sample exponents vary across levels so the bounds are exercised away
// from the generic e = 1 stratum. Failures record a replayable witness.
FiltrationReport audit_filtration(const ChartGroup& G, int precision, long sample_count,
                                  std::uint64_t seed);

}  // namespace plie
