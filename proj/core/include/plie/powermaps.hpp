#pragma once

#include <vector>

#include "plie/chart.hpp"

namespace plie {

// Result of inverting the p-th power map by fixed-point iteration.
//
// The input determines the root modulo p^(N-1) only: changing the root by
// p^(N-1) changes its p-th power by p^N. The returned root therefore carries
// precision N-1, while tau_p(root) still reproduces the input exactly at the
// input's full precision N.
struct PthRootResult {
    ChartVector root;
    int iterations = 0;
    // Norm exponents of x - tau_p(y_k) per iteration; strictly increasing
    // until the residual hits the precision floor.
    std::vector<long> residual_exponents;
};

// The p-th power map tau_p(x) = x^p. Multiplies norms by p^-1 exactly:
// e(tau_p(x)) = e(x) + 1.
ChartVector tau_p(const ChartGroup& G, const ChartVector& x);

// Unique y in the chart ball with y^p = x, for x with e(x) >= 2 (the image
// p V of tau_p). Derivative-free iteration
//
//   y_0 = x / p,   y <- y + (x - tau_p(y)) / p
//
// which gains at least one digit per step because ||tau_p'(y) - p id|| < p^-1
// on the ball. Throws OutOfDomain when e(x) < 2 and NonContraction when the
// residual fails to strictly increase.
PthRootResult pth_root(const ChartGroup& G, const ChartVector& x);

// x^z for z in Z_p: the one-parameter group eta_x evaluated by base-p digit
// interpolation, x^z = prod_i (tau_p^i(x))^{z_i}. Factors beyond the digit
// cutoff (e(x) + i > N) are the identity at precision and are skipped.
// Digits of z beyond z's own precision count as 0; the result precision is
// min(N, e(x) + prec(z)).
ChartVector power_padic(const ChartGroup& G, const ChartVector& x, const ZpInt& z);

}  // namespace plie
