#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plie/explog.hpp"

namespace plie {

// A named map on (a ball inside) the chart space, drawn from the library's
// own operations, used as the subject of the calculus probes.
struct ProbeFunction {
    std::string name;
    std::function<ChartVector(const ChartVector&)> fn;

    ChartVector operator()(const ChartVector& x) const { return fn(x); }
};

ProbeFunction probe_identity();
ProbeFunction probe_scale(const ZpInt& c);
ProbeFunction probe_tau_p(const ChartGroup& G);
ProbeFunction probe_pth_root(const ChartGroup& G);
ProbeFunction probe_log(const ChartGroup& G, int target_prec);
ProbeFunction probe_exp(const ChartGroup& G, int target_prec);
// exp with a valuation-adaptive target: deeper inputs get more accurate
// values, so decay tables measure the function rather than the truncation
// noise of a fixed-target evaluation.
ProbeFunction probe_exp_adaptive(const ChartGroup& G, int base_target);
// x -> a * x with the left factor frozen.
ProbeFunction probe_mul_frozen(const ChartGroup& G, const ChartVector& a);

// One row per scale m: the worst (smallest) ratio exponent seen over all
// sampled pairs at that scale. Exponents are exact integers; floored rows
// vanished at the precision floor and record the floor as a lower bound.
struct DecayRow {
    int scale = 0;
    long ratio_exponent = 0;
    bool floored = false;
};

struct DecayTable {
    std::string probe;
    std::vector<DecayRow> rows;
};

// The first-order difference quotient f^[1](x, y, t) = (f(x+ty) - f(x)) / t,
// evaluated exactly; dividing by t costs val(t) digits of precision.
ChartVector diff_quotient(const ProbeFunction& f, const ChartVector& x, const ChartVector& y,
                          const QpScalar& t);

// Strict differentiability probe at x0 against a candidate derivative A
// (d x d, row-major): for each scale m samples pairs y != z in the ball of
// radius p^-m around x0 with e(z - y) = m exactly, and records the worst
//
//   e( f(z) - f(y) - A (z - y) ) - e(z - y).
//
// For a strictly differentiable f with the right A the rows grow without
// bound until the precision floor.
DecayTable strict_diff_probe(const ProbeFunction& f, const ChartVector& x0,
                             const std::vector<ZpInt>& A, int m_max, int samples,
                             std::uint64_t seed);

// Homogeneous coefficient evaluator: u -> a_j(x, u), degree j in u.
using CoefficientFn = std::function<ChartVector(const ChartVector& x, const ChartVector& u)>;

// k-th order Taylor remainder probe with caller-supplied coefficients
// a_1..a_k: records the worst e(R(x, y)) - k e(y - x) per scale, where
// R(x,y) = f(y) - f(x) - sum_j a_j(x, y-x). An increasing table certifies
// the k-th order expansion empirically.
DecayTable taylor_probe(const ProbeFunction& f, const ChartVector& x0,
                        const std::vector<CoefficientFn>& coefficients, int m_max, int samples,
                        std::uint64_t seed);

// n-linear evaluator on raw Z_p vectors (norm <= 1 arguments).
using MultilinFn = std::function<std::vector<ZpInt>(const std::vector<std::vector<ZpInt>>&)>;

struct MultilinWitness {
    std::uint64_t sample_index = 0;
    long lhs_bound = 0;
    long rhs = 0;
};

struct MultilinReport {
    long samples = 0;
    long passes = 0;
    long floor_passes = 0;
    std::optional<MultilinWitness> counterexample;

    bool passed() const { return !counterexample.has_value(); }
};

// Perturbation bound for an n-linear map of norm exponent beta_norm_exp:
// for u_i, v_i of norm <= 1 with e(u_i - v_i) >= eps_exponent, asserts
// e(beta(u) - beta(v)) >= beta_norm_exp + eps_exponent.
MultilinReport multilin_perturb_check(const MultilinFn& beta, int arity, int arg_dim,
                                      long beta_norm_exp, int eps_exponent, int samples,
                                      std::uint64_t p, int precision, std::uint64_t seed);

// The pathological smooth curve of Schikhof type: sends sum a_j p^j to
// sum a_j p^(k_map(j)). Smooth and injective with derivative identically 0
// when k_map grows fast enough; the default is k_map(j) = j^2 + j.
ZpInt schikhof_curve(const std::function<long(long)>& k_map, const ZpInt& x);
long default_curve_kmap(long j);

// Difference-quotient decay of the curve: worst e(gamma(x) - gamma(y)) - m
// over pairs with e(x - y) = m exactly. Superlinear growth realizes
// "derivative zero" at probe level.
DecayTable curve_decay_table(const std::function<long(long)>& k_map, std::uint64_t p,
                             int precision, int m_max, int samples, std::uint64_t seed);

}  // namespace plie
