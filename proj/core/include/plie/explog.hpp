#pragma once

#include <vector>

#include "plie/powermaps.hpp"

namespace plie {

// Per-iteration trace of a limit computation. steps[j] is the ultrametric
// distance exponent between successive terms t_j and t_{j+1}, compared at
// their shared precision; floored[j] marks a difference that vanished at the
// comparison floor (only a lower bound is known). Stabilization at n* means
// two consecutive distances reached the target exponent without decreasing,
// and the returned term is t_{n*} with out_precision = N - n* documenting
// the digits spent on the limit.
struct ConvergenceReport {
    std::vector<long> steps;
    std::vector<bool> floored;
    long stabilized_at = 0;
    int out_precision = 0;
};

struct ExpLogResult {
    ChartVector value;
    ConvergenceReport report;
};

// log(x) = lim_n p^-n x^(p^n), evaluated until two successive terms agree
// mod p^target_prec. Needs working precision >= 2*target_prec. A surjective
// isometry: e(log x) = e(x) exactly, log(0) = 0.
ExpLogResult log_chart(const ChartGroup& G, const ChartVector& x, int target_prec);

// exp(v) = lim_n tau_p^-n(p^n v), each term realized as n successive p-th
// root extractions of p^n v. Inverse of log_chart; same contract.
ExpLogResult exp_chart(const ChartGroup& G, const ChartVector& v, int target_prec);

// The one-parameter group through v: z -> exp(z v).
ChartVector one_param(const ChartGroup& G, const ChartVector& v, const ZpInt& z, int target_prec);

// How trotter_sum evaluates log((exp(p^n x) exp(p^n y))^(p^-n)).
//
// LogFirst uses log(w^(p^-n)) = p^-n log(w), taking the logarithm of the
// product while its valuation is still high (cheap, n* = 2) and dividing by
// p^n afterwards. RootsFirst extracts the n p-th roots literally and then
// takes log of a valuation-1 element; it computes the same group element but
// spends roughly target_prec more digits, so at default precision it is only
// usable for small n. The two routes are cross-checked in the test suite.
enum class TrotterRoute { LogFirst, RootsFirst };

struct TrotterResult {
    ChartVector value;                    // the n_max-th term
    std::vector<long> distance_exponents; // distance of t_n to x+y, n = 1..n_max
    std::vector<bool> floored;
    long stabilized_at = 0;               // first n with distance >= target (0 if none)
    int out_precision = 0;                // precision of the returned term
};

// The Trotter sum formula: x + y = lim_n log((exp(p^n x) exp(p^n y))^(p^-n)).
// Recovers addition from multiplication; on the Heisenberg group the limit is
// x + y even though mul(x, y) is not.
TrotterResult trotter_sum(const ChartGroup& G, const ChartVector& x, const ChartVector& y,
                          int n_max, int target_prec,
                          TrotterRoute route = TrotterRoute::LogFirst);

// Coordinates of the second kind along a basis of the chart ball.
//
// The basis is d chart vectors e_1..e_d of norm exponent exactly 1 whose
// leading digits form an invertible matrix mod p (the standard choice is
// e_i = p * std_i). For a level j >= 0,
//
//   psi(z_1,...,z_d) = exp(z_1 p^j e_1) * ... * exp(z_d p^j e_d)
//
// maps Z_p^d onto the ball of norm exponent >= j+1. The factors are
// evaluated as exp(p^j e_i)^(z_i) through the one-parameter identity
// exp(z v) = exp(v)^z, so exp runs once per basis vector.
std::vector<ChartVector> standard_basis(const ChartGroup& G, int precision);

ChartVector second_kind(const ChartGroup& G, const std::vector<ChartVector>& basis, int level_j,
                        const std::vector<ZpInt>& z, int target_prec);

// Inverse of psi on the ball of norm exponent >= j+1: the unique z with
// psi(z) = g mod p^target_prec, found by the fixed-point refinement
//
//   z <- z + p^-(j+1) Binv coords(psi(z)^-1 * g)
//
// where B is the leading-digit basis matrix. The residual exponent must
// strictly increase per step (NonContraction otherwise).
std::vector<ZpInt> second_kind_inverse(const ChartGroup& G, const std::vector<ChartVector>& basis,
                                       int level_j, const ChartVector& g, int target_prec);

}  // namespace plie
