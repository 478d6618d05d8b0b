#include "plie/explog.hpp"

namespace plie {

namespace {

// Shared stabilization driver for the log/exp limits. term(n) must return
// the n-th term at precision N - n; terms are compared at the precision of
// the later one. Stabilized once two consecutive distances reach the target
// without decreasing.
template <typename TermFn>
ExpLogResult run_limit(const char* what, const ChartVector& start, int target_prec, TermFn term) {
    const int n_work = start.precision();
    if (target_prec < 1) throw UsageError(std::string(what) + ": target precision must be >= 1");

    ExpLogResult out{start, {}};
    if (start.is_zero()) {
        out.report.out_precision = n_work;
        return out;
    }

    // Generic inputs (norm exponent 1) stabilize within target_prec steps and
    // need 2*target_prec working digits; each extra digit of valuation saves
    // two steps, so the requirement relaxes accordingly.
    const long e_start = norm_exp(start).exponent();
    const int required = std::max<int>(target_prec + 2,
                                       static_cast<int>(2 * target_prec - 2 * (e_start - 1)));
    if (n_work < required) {
        throw UsageError(std::string(what) + ": working precision " + std::to_string(n_work) +
                         " below " + std::to_string(required) + " for target " +
                         std::to_string(target_prec));
    }

    ChartVector prev = start;
    const int n_limit = n_work - target_prec;
    for (int n = 1; n <= n_limit; ++n) {
        ChartVector cur = term(n);
        NormExp d = dist_exp(cv_truncate(prev, cur.precision()), cur);
        out.report.steps.push_back(d.bound());
        out.report.floored.push_back(!d.is_finite());
        const auto& s = out.report.steps;
        const auto& fl = out.report.floored;
        // Guard against accidental agreement exactly at the target: demand a
        // non-decreasing pair there. A floored value is only a lower bound,
        // and a pair strictly beyond the target may legitimately step down
        // from an ultrametric spike (extra cancellation in one term).
        const bool monotone_ok =
            s.size() >= 2 && (fl[fl.size() - 1] || fl[fl.size() - 2] ||
                              s[s.size() - 1] >= s[s.size() - 2] ||
                              (s[s.size() - 1] > target_prec && s[s.size() - 2] > target_prec));
        if (s.size() >= 2 && s[s.size() - 2] >= target_prec && s[s.size() - 1] >= target_prec &&
            monotone_ok) {
            out.value = cur;
            out.report.stabilized_at = n;
            out.report.out_precision = n_work - n;
            return out;
        }
        prev = cur;
    }
    throw ConvergenceFailure(std::string(what) + ": terms failed to stabilize mod p^" +
                             std::to_string(target_prec) + " within " + std::to_string(n_limit) +
                             " steps");
}

void require_in_ball(const ChartGroup& G, const ChartVector& x, const char* what) {
    if (x.prime() != G.prime() || x.dim() != G.dim()) {
        throw UsageError(std::string(what) + ": vector does not match the group");
    }
    if (!x.in_ball()) throw OutOfChart(std::string(what) + ": input outside the chart ball");
}

}  // namespace

ExpLogResult log_chart(const ChartGroup& G, const ChartVector& x, int target_prec) {
    require_in_ball(G, x, "log_chart");
    ChartVector power = x;  // tau_p^n(x), advanced incrementally
    return run_limit("log_chart", x, target_prec, [&](int n) {
        power = tau_p(G, power);
        return cv_div_pow_p(power, n);
    });
}

ExpLogResult exp_chart(const ChartGroup& G, const ChartVector& v, int target_prec) {
    require_in_ball(G, v, "exp_chart");
    return run_limit("exp_chart", v, target_prec, [&](int n) {
        ChartVector u = cv_mul_pow_p(v, n);
        // p^n v has norm exponent n + e(v) >= 2 throughout, so every root
        // extraction is inside the pth_root domain by construction.
        for (int k = 0; k < n; ++k) u = pth_root(G, u).root;
        return u;
    });
}

ChartVector one_param(const ChartGroup& G, const ChartVector& v, const ZpInt& z, int target_prec) {
    require_in_ball(G, v, "one_param");
    if (z.prime() != G.prime()) throw UsageError("one_param: scalar prime mismatch");
    ZpInt scale = truncate(z, std::min(z.precision(), v.precision()));
    return exp_chart(G, cv_scale(scale, v), target_prec).value;
}

TrotterResult trotter_sum(const ChartGroup& G, const ChartVector& x, const ChartVector& y,
                          int n_max, int target_prec, TrotterRoute route) {
    require_in_ball(G, x, "trotter_sum");
    require_in_ball(G, y, "trotter_sum");
    if (n_max < 1) throw UsageError("trotter_sum: n_max must be >= 1");

    const ChartVector sum = cv_add(x, y);
    TrotterResult out{G.zero(x.precision()), {}, {}, 0, 0};
    for (int n = 1; n <= n_max; ++n) {
        ChartVector u = G.mul(exp_chart(G, cv_mul_pow_p(x, n), target_prec).value,
                              exp_chart(G, cv_mul_pow_p(y, n), target_prec).value);
        NormExp eu = norm_exp(u);
        if (eu.is_finite() && eu.exponent() < n + 1) {
            throw VerificationError("trotter_sum: exp(p^n x) exp(p^n y) left the image of tau_p^n");
        }
        ChartVector t = G.zero(x.precision());
        if (route == TrotterRoute::LogFirst) {
            t = cv_div_pow_p(log_chart(G, u, target_prec).value, n);
        } else {
            for (int k = 0; k < n; ++k) u = pth_root(G, u).root;
            t = log_chart(G, u, target_prec).value;
        }
        NormExp d = dist_exp(cv_truncate(sum, t.precision()), t);
        out.distance_exponents.push_back(d.bound());
        out.floored.push_back(!d.is_finite());
        if (out.stabilized_at == 0 && d.bound() >= target_prec) out.stabilized_at = n;
        out.value = t;
        out.out_precision = t.precision();
    }
    return out;
}

std::vector<ChartVector> standard_basis(const ChartGroup& G, int precision) {
    std::vector<ChartVector> basis;
    for (int i = 0; i < G.dim(); ++i) {
        std::vector<ZpInt> coords(static_cast<std::size_t>(G.dim()),
                                  ZpInt::zero(G.prime(), precision));
        coords[static_cast<std::size_t>(i)] =
            ZpInt::from_long(G.prime(), precision, static_cast<long>(G.prime()));
        basis.emplace_back(G.prime(), precision, std::move(coords));
    }
    return basis;
}

namespace {

// Leading-digit matrix of the basis: B[k][i] = digit 1 of coordinate k of
// e_i. Returns its inverse mod p; throws SingularBasis when not invertible.
std::vector<std::vector<std::uint64_t>> leading_inverse(const ChartGroup& G,
                                                        const std::vector<ChartVector>& basis) {
    const int d = G.dim();
    const std::uint64_t p = G.prime();
    if (static_cast<int>(basis.size()) != d) {
        throw UsageError("second_kind: basis must have one vector per dimension");
    }
    std::vector<std::vector<std::uint64_t>> aug(
        static_cast<std::size_t>(d), std::vector<std::uint64_t>(static_cast<std::size_t>(2 * d), 0));
    for (int i = 0; i < d; ++i) {
        const ChartVector& e = basis[static_cast<std::size_t>(i)];
        if (e.prime() != p || e.dim() != d) throw UsageError("second_kind: basis/group mismatch");
        if (!e.in_ball()) throw OutOfChart("second_kind: basis vector outside the chart ball");
        for (int k = 0; k < d; ++k) {
            mpz_class digit = e.coord(k).residue() / static_cast<unsigned long>(p);
            aug[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                mpz_fdiv_ui(digit.get_mpz_t(), static_cast<unsigned long>(p));
        }
    }
    for (int i = 0; i < d; ++i) aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(d + i)] = 1;

    // Gauss-Jordan over F_p.
    auto inv_mod_p = [p](std::uint64_t a) {
        std::uint64_t r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int row = col; row < d; ++row) {
            if (aug[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] % p != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) {
            throw SingularBasis("second_kind: leading-digit matrix not invertible mod p");
        }
        std::swap(aug[static_cast<std::size_t>(col)], aug[static_cast<std::size_t>(pivot)]);
        const std::uint64_t s = inv_mod_p(aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
        for (int j = 0; j < 2 * d; ++j) {
            auto& cell = aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
            cell = cell % p * s % p;
        }
        for (int row = 0; row < d; ++row) {
            if (row == col) continue;
            const std::uint64_t f = aug[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] % p;
            if (f == 0) continue;
            for (int j = 0; j < 2 * d; ++j) {
                auto& cell = aug[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
                cell = (cell + (p - f) * aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)]) % p;
            }
        }
    }
    std::vector<std::vector<std::uint64_t>> inv(static_cast<std::size_t>(d),
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(d + j)];
        }
    }
    return inv;
}

std::vector<ChartVector> one_param_generators(const ChartGroup& G,
                                              const std::vector<ChartVector>& basis, int level_j,
                                              int target_prec) {
    std::vector<ChartVector> gens;
    gens.reserve(basis.size());
    for (const auto& e : basis) {
        gens.push_back(exp_chart(G, cv_mul_pow_p(e, level_j), target_prec).value);
    }
    return gens;
}

ChartVector psi_eval(const ChartGroup& G, const std::vector<ChartVector>& gens,
                     const std::vector<ZpInt>& z) {
    ChartVector acc = G.zero(gens.front().precision());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        acc = G.mul(acc, power_padic(G, gens[i], z[i]));
    }
    return acc;
}

}  // namespace

ChartVector second_kind(const ChartGroup& G, const std::vector<ChartVector>& basis, int level_j,
                        const std::vector<ZpInt>& z, int target_prec) {
    if (level_j < 0) throw UsageError("second_kind: level must be >= 0");
    leading_inverse(G, basis);  // validates the basis
    if (z.size() != basis.size()) throw UsageError("second_kind: need one scalar per basis vector");
    for (const auto& zi : z) {
        if (zi.prime() != G.prime()) throw UsageError("second_kind: scalar prime mismatch");
    }
    return psi_eval(G, one_param_generators(G, basis, level_j, target_prec), z);
}

std::vector<ZpInt> second_kind_inverse(const ChartGroup& G, const std::vector<ChartVector>& basis,
                                       int level_j, const ChartVector& g, int target_prec) {
    if (level_j < 0) throw UsageError("second_kind_inverse: level must be >= 0");
    const auto binv = leading_inverse(G, basis);
    require_in_ball(G, g, "second_kind_inverse");
    NormExp eg = norm_exp(g);
    if (eg.is_finite() && eg.exponent() < level_j + 1) {
        throw OutOfDomain("second_kind_inverse: target must have norm exponent >= " +
                          std::to_string(level_j + 1));
    }

    const int d = G.dim();
    const std::uint64_t p = G.prime();
    const auto gens = one_param_generators(G, basis, level_j, target_prec);
    std::vector<ZpInt> z(static_cast<std::size_t>(d), ZpInt::zero(p, g.precision()));

    long last_exp = -1;
    for (int iter = 0; iter <= g.precision(); ++iter) {
        ChartVector rho = G.mul(G.inv(psi_eval(G, gens, z)), g);
        NormExp er = norm_exp(rho);
        if (!er.is_finite() || er.exponent() >= target_prec) return z;
        if (last_exp >= 0 && er.exponent() <= last_exp) {
            throw NonContraction("second_kind_inverse: residual exponent stalled at " +
                                 std::to_string(er.exponent()));
        }
        last_exp = er.exponent();
        // delta = Binv * (coords(rho) / p^(j+1)), lifted digitwise mod p.
        std::vector<ZpInt> scaled;
        scaled.reserve(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) scaled.push_back(div_pow_p(rho.coord(k), level_j + 1));
        for (int i = 0; i < d; ++i) {
            ZpInt delta = ZpInt::zero(p, scaled.front().precision());
            for (int k = 0; k < d; ++k) {
                const std::uint64_t c = binv[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                if (c == 0) continue;
                delta = zp_add(delta, zp_mul(ZpInt::from_long(p, scaled[static_cast<std::size_t>(k)].precision(),
                                                              static_cast<long>(c)),
                                             scaled[static_cast<std::size_t>(k)]));
            }
            z[static_cast<std::size_t>(i)] = zp_add(z[static_cast<std::size_t>(i)], delta);
        }
    }
    throw NonContraction("second_kind_inverse: did not reach the target precision");
}

}  // namespace plie
