#pragma once

#include <vector>

#include "plie/zp.hpp"

namespace plie {

// Truncated reference series on chart coordinates, used by the self-test and
// the test suites as independent cross-checks of the limit-based maps. Each
// sum keeps exactly the terms that can touch the target digits and drops the
// tail (which is O(p^target)); the returned value is truncated to the target
// precision and is to be compared mod p^target.

// Mercator series log(1+x) = sum_{k>=1} (-1)^(k+1) x^k / k, for e(x) >= 1.
ZpInt log_series(const ZpInt& x, int target_prec);

// Exponential series exp(v) - 1 = sum_{k>=1} v^k / k!, for e(v) >= 1. All
// terms are integral for odd p on the chart ball.
ZpInt exp_series(const ZpInt& v, int target_prec);

// Binomial series (1+c)^(1/p) - 1 = sum_{k>=1} C(1/p, k) c^k, for e(c) >= 2.
// The p^-k inside C(1/p, k) eats k digits per term, so the reachable target
// depends on p and the working precision; infeasible requests throw
// UsageError.
ZpInt pth_root_series(const ZpInt& c, int target_prec);

// Matrix versions on row-major m x m chart coordinates (GL congruence).
std::vector<ZpInt> log_series_mat(const std::vector<ZpInt>& a, int m, int target_prec);
std::vector<ZpInt> exp_series_mat(const std::vector<ZpInt>& a, int m, int target_prec);

}  // namespace plie
