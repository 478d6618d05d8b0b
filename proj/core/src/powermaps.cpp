#include "plie/powermaps.hpp"

namespace plie {

ChartVector tau_p(const ChartGroup& G, const ChartVector& x) {
    return G.power_int(x, static_cast<long>(G.prime()));
}

PthRootResult pth_root(const ChartGroup& G, const ChartVector& x) {
    const int n = x.precision();
    if (n < 2) {
        throw PrecisionExhausted("pth_root: need precision >= 2 to determine any root digit");
    }
    if (x.is_zero()) {
        return PthRootResult{ChartVector::zero(x.prime(), n - 1, x.dim()), 1, {}};
    }
    NormExp e = norm_exp(x);
    if (!(e.exponent() >= 2)) {
        throw OutOfDomain("pth_root: input must lie in pV (norm exponent >= 2), got exponent " +
                          std::to_string(e.exponent()));
    }

    // Iterate on canonical residue lifts at the input's full precision; the
    // correction (x - tau_p(y))/p re-enters at precision n via the canonical
    // lift, whose ambiguity sits above p^(n-1) and never feeds back into the
    // residual mod p^n.
    auto lift = [&](const ChartVector& v) {
        std::vector<ZpInt> coords;
        coords.reserve(static_cast<std::size_t>(v.dim()));
        for (const auto& c : v.coords()) coords.emplace_back(v.prime(), n, c.residue());
        return ChartVector(v.prime(), n, std::move(coords));
    };

    PthRootResult result{lift(cv_div_pow_p(x, 1)), 0, {}};
    ChartVector y = result.root;
    long last_exp = -1;
    for (int iter = 1; iter <= n + 1; ++iter) {
        ChartVector residual = cv_sub(x, tau_p(G, y));
        result.iterations = iter;
        if (residual.is_zero()) break;
        const long re = norm_exp(residual).exponent();
        result.residual_exponents.push_back(re);
        if (last_exp >= 0 && re <= last_exp) {
            throw NonContraction("pth_root: residual exponent stalled at " + std::to_string(re) +
                                 " (broken group model)");
        }
        last_exp = re;
        y = lift(cv_add(y, cv_div_pow_p(residual, 1)));
    }
    result.root = cv_truncate(y, n - 1);
    return result;
}

ChartVector power_padic(const ChartGroup& G, const ChartVector& x, const ZpInt& z) {
    if (x.prime() != z.prime()) throw UsageError("power_padic: prime mismatch");
    const int n = x.precision();
    if (x.is_zero()) return ChartVector::zero(x.prime(), n, x.dim());
    if (!x.in_ball()) throw OutOfChart("power_padic: base outside the chart ball");

    const long e = norm_exp(x).exponent();
    const int cutoff = static_cast<int>(n - e);  // last i with e(tau_p^i(x)) <= n
    const int digits = std::min(cutoff + 1, z.precision());

    ChartVector acc = G.zero(n);
    ChartVector cur = x;
    mpz_class rest = z.residue();
    for (int i = 0; i < digits && rest != 0; ++i) {
        const unsigned long digit =
            mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(G.prime()));
        mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(G.prime()));
        if (digit != 0) acc = G.mul(acc, G.power_int(cur, static_cast<long>(digit)));
        if (i + 1 < digits) cur = tau_p(G, cur);
    }

    const int out_prec = static_cast<int>(std::min<long>(n, e + z.precision()));
    return cv_truncate(acc, out_prec);
}

}  // namespace plie
