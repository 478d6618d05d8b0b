#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plie/explog.hpp"

namespace plie {

// Replayable witnesses. Every "pass" certificate carries the exact instances
// it checked; replay_certificate re-runs them through the public operations
// and reproduces the claimed identities at the recorded precision.

// Level-j coset identity: e(mul(x,y) - x - y) >= j+1.
struct L1Witness {
    int level_j = 0;
    ChartVector x;
    ChartVector y;
};

// Generation: second_kind(z) = g mod p^target at the recorded level.
struct L2Witness {
    ChartVector g;
    std::vector<ZpInt> z;
};

// p^2-th power: power_int(power_int(w, p), p) = c, where c = [u, v].
struct L3Witness {
    ChartVector u;
    ChartVector v;
    ChartVector c;
    ChartVector w;
};

struct LazardCertificate {
    std::string condition;  // "L1" | "L2" | "L3"
    std::string group;
    std::uint64_t prime = 0;
    int precision = 0;
    std::uint64_t seed = 0;
    long samples = 0;
    bool pass = false;
    std::string failure_detail;

    int depth = 0;        // L1: max level audited
    int level_j = 0;      // L2: psi level; L3: sampling ball level
    int target_prec = 0;  // L2: comparison precision

    std::vector<L1Witness> l1;
    std::vector<L2Witness> l2;
    std::vector<L3Witness> l3;
};

// L1 (pro-p): for each level j <= depth and random x, y with e >= j, checks
// e(mul(x,y) - (x+y)) >= j+1, certifying that every depth-j quotient is the
// additive group (F_p^d, +), hence a p-group.
LazardCertificate audit_L1(const ChartGroup& G, int precision, int depth, long samples_per_level,
                           std::uint64_t seed);

// L2 (topological finite generation): random targets g with e(g) >= j+1 are
// expressed through second_kind_inverse as products of powers of the d
// generators exp(p^j e_i), witnessed at the target precision.
LazardCertificate audit_L2(const ChartGroup& G, const std::vector<ChartVector>& basis,
                           int precision, int level_j, long targets, int target_prec,
                           std::uint64_t seed);

// L3 (commutators are p^2-th powers): for random u, v at ball level 2,
// c = [u, v] has e(c) >= e(u) + e(v) >= 4; two successive p-th roots of c
// give an explicit witness w with w^(p^2) = c, re-verified exactly.
LazardCertificate audit_L3(const ChartGroup& G, int precision, long samples, std::uint64_t seed);

// Re-runs every recorded witness; true iff all claimed identities hold.
bool replay_certificate(const LazardCertificate& cert, const ChartGroup& G,
                        const std::vector<ChartVector>& basis_for_l2 = {});

}  // namespace plie
