#include "plie/probes.hpp"

namespace plie {

ProbeFunction probe_identity() {
    return {"identity", [](const ChartVector& x) { return x; }};
}

ProbeFunction probe_scale(const ZpInt& c) {
    return {"scale", [c](const ChartVector& x) { return cv_scale(c, x); }};
}

ProbeFunction probe_tau_p(const ChartGroup& G) {
    return {"tau_p", [G](const ChartVector& x) { return tau_p(G, x); }};
}

ProbeFunction probe_pth_root(const ChartGroup& G) {
    return {"pth_root", [G](const ChartVector& x) { return pth_root(G, x).root; }};
}

ProbeFunction probe_log(const ChartGroup& G, int target_prec) {
    return {"log", [G, target_prec](const ChartVector& x) {
                return log_chart(G, x, target_prec).value;
            }};
}

ProbeFunction probe_exp(const ChartGroup& G, int target_prec) {
    return {"exp", [G, target_prec](const ChartVector& x) {
                return exp_chart(G, x, target_prec).value;
            }};
}

ProbeFunction probe_exp_adaptive(const ChartGroup& G, int base_target) {
    return {"exp", [G, base_target](const ChartVector& x) {
                NormExp e = norm_exp(x);
                if (!e.is_finite()) return x;
                // Want accuracy beyond the k = 3 Taylor term at this depth,
                // capped by what the working precision allows.
                const long depth = e.exponent();
                const long feasible = (x.precision() + 2 * (depth - 1)) / 2;
                const long target = std::min<long>(std::max<long>(base_target, 3 * depth + 1),
                                                   feasible);
                return exp_chart(G, x, static_cast<int>(target)).value;
            }};
}

ProbeFunction probe_mul_frozen(const ChartGroup& G, const ChartVector& a) {
    return {"mul_frozen", [G, a](const ChartVector& x) { return G.mul(a, x); }};
}

ChartVector diff_quotient(const ProbeFunction& f, const ChartVector& x, const ChartVector& y,
                          const QpScalar& t) {
    if (t.is_zero()) throw UsageError("diff_quotient: t must be nonzero");
    std::vector<ZpInt> ty;
    ty.reserve(static_cast<std::size_t>(y.dim()));
    for (const auto& c : y.coords()) ty.push_back(qp_mul(t, c));
    const int ty_prec = ty.front().precision();
    ChartVector shifted = cv_add(x, ChartVector(y.prime(), ty_prec, std::move(ty)));
    ChartVector num = cv_sub(f(shifted), f(cv_truncate(x, shifted.precision())));
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(num.dim()));
    for (const auto& c : num.coords()) out.push_back(qp_div(c, t));
    const int out_prec = out.front().precision();
    return ChartVector(num.prime(), out_prec, std::move(out));
}

namespace {

ChartVector apply_matrix(const std::vector<ZpInt>& A, const ChartVector& w) {
    const int d = w.dim();
    if (static_cast<int>(A.size()) != d * d) {
        throw UsageError("probe: derivative matrix must be d x d row-major");
    }
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        ZpInt acc = ZpInt::zero(w.prime(), w.precision());
        for (int k = 0; k < d; ++k) {
            const ZpInt& a = A[static_cast<std::size_t>(i * d + k)];
            if (a.is_zero()) continue;
            acc = zp_add(acc, zp_mul(a, w.coord(k)));
        }
        out.push_back(std::move(acc));
    }
    const int out_prec = out.front().precision();
    return ChartVector(w.prime(), out_prec, std::move(out));
}

// Pair (y, z) in the ball of radius p^-m around x0 with e(z - y) exactly m.
struct ScalePair {
    ChartVector y;
    ChartVector z;
};

ScalePair sample_pair_at_scale(const ChartVector& x0, int m, Rng& rng) {
    const std::uint64_t p = x0.prime();
    const int prec = x0.precision();
    std::vector<ZpInt> u, w;
    u.reserve(static_cast<std::size_t>(x0.dim()));
    for (int i = 0; i < x0.dim(); ++i) u.push_back(zp_random(p, prec, rng, m));
    for (;;) {
        w.clear();
        for (int i = 0; i < x0.dim(); ++i) w.push_back(zp_random(p, prec, rng, m));
        ChartVector wv(p, prec, w);
        NormExp e = norm_exp(wv);
        if (e.is_finite() && e.exponent() == m) {
            ChartVector y = cv_add(x0, ChartVector(p, prec, std::move(u)));
            ChartVector z = cv_add(y, wv);
            return {std::move(y), std::move(z)};
        }
    }
}

void update_worst(std::optional<DecayRow>& worst, int m, const NormExp& ratio) {
    DecayRow row{m, ratio.bound(), !ratio.is_finite()};
    if (!worst) {
        worst = row;
        return;
    }
    // A finite exponent is a sharper (worse) observation than a floor bound
    // of the same value.
    if (row.ratio_exponent < worst->ratio_exponent ||
        (row.ratio_exponent == worst->ratio_exponent && !row.floored)) {
        worst = row;
    }
}

}  // namespace

DecayTable strict_diff_probe(const ProbeFunction& f, const ChartVector& x0,
                             const std::vector<ZpInt>& A, int m_max, int samples,
                             std::uint64_t seed) {
    DecayTable table{f.name, {}};
    for (int m = 1; m <= m_max; ++m) {
        std::optional<DecayRow> worst;
        for (int s = 0; s < samples; ++s) {
            Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(m) << 32 |
                                                static_cast<std::uint64_t>(s));
            ScalePair pair = sample_pair_at_scale(x0, m, rng);
            ChartVector w = cv_sub(pair.z, pair.y);
            ChartVector r = cv_sub(cv_sub(f(pair.z), f(pair.y)), apply_matrix(A, w));
            // e(z - y) = m by construction.
            NormExp ratio = norm_exp(r);
            update_worst(worst, m,
                         ratio.is_finite() ? NormExp::of(ratio.exponent() - m)
                                           : NormExp::zero_at(ratio.floor() - m));
        }
        table.rows.push_back(*worst);
    }
    return table;
}

DecayTable taylor_probe(const ProbeFunction& f, const ChartVector& x0,
                        const std::vector<CoefficientFn>& coefficients, int m_max, int samples,
                        std::uint64_t seed) {
    const int k = static_cast<int>(coefficients.size());
    if (k < 1) throw UsageError("taylor_probe: need at least one coefficient");
    DecayTable table{f.name, {}};
    for (int m = 1; m <= m_max; ++m) {
        std::optional<DecayRow> worst;
        for (int s = 0; s < samples; ++s) {
            Rng rng = Rng::for_sample(seed ^ 0x7a1e5ULL, static_cast<std::uint64_t>(m) << 32 |
                                                             static_cast<std::uint64_t>(s));
            ScalePair pair = sample_pair_at_scale(x0, m, rng);
            ChartVector u = cv_sub(pair.z, pair.y);
            ChartVector r = cv_sub(f(pair.z), f(pair.y));
            for (const auto& a_j : coefficients) {
                ChartVector c = a_j(pair.y, u);
                r = cv_sub(cv_truncate(r, std::min(r.precision(), c.precision())),
                           cv_truncate(c, std::min(r.precision(), c.precision())));
            }
            NormExp e = norm_exp(r);
            update_worst(worst, m,
                         e.is_finite() ? NormExp::of(e.exponent() - static_cast<long>(k) * m)
                                       : NormExp::zero_at(e.floor() - static_cast<long>(k) * m));
        }
        table.rows.push_back(*worst);
    }
    return table;
}

MultilinReport multilin_perturb_check(const MultilinFn& beta, int arity, int arg_dim,
                                      long beta_norm_exp, int eps_exponent, int samples,
                                      std::uint64_t p, int precision, std::uint64_t seed) {
    if (eps_exponent < 0 || eps_exponent > precision) {
        throw UsageError("multilin_perturb_check: eps exponent out of range");
    }
    MultilinReport report;
    for (int s = 0; s < samples; ++s) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(s));
        std::vector<std::vector<ZpInt>> u(static_cast<std::size_t>(arity));
        std::vector<std::vector<ZpInt>> v(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) {
            for (int j = 0; j < arg_dim; ++j) {
                ZpInt ui = zp_random(p, precision, rng, 0);
                ZpInt wi = zp_random(p, precision, rng, eps_exponent);
                v[static_cast<std::size_t>(i)].push_back(zp_add(ui, wi));
                u[static_cast<std::size_t>(i)].push_back(std::move(ui));
            }
        }
        std::vector<ZpInt> bu = beta(u);
        std::vector<ZpInt> bv = beta(v);
        NormExp lhs = NormExp::zero_at(precision);
        for (std::size_t j = 0; j < bu.size(); ++j) lhs = min(lhs, val(zp_sub(bu[j], bv[j])));
        const NormExp rhs = NormExp::of(beta_norm_exp + eps_exponent);
        report.samples += 1;
        switch (check_geq(lhs, rhs)) {
            case CheckOutcome::Pass:
                report.passes += 1;
                break;
            case CheckOutcome::PassAtFloor:
                report.passes += 1;
                report.floor_passes += 1;
                break;
            case CheckOutcome::Fail:
                if (!report.counterexample) {
                    report.counterexample =
                        MultilinWitness{static_cast<std::uint64_t>(s), lhs.bound(), rhs.exponent()};
                }
                break;
        }
    }
    return report;
}

ZpInt schikhof_curve(const std::function<long(long)>& k_map, const ZpInt& x) {
    const std::uint64_t p = x.prime();
    const int n = x.precision();
    long prev = -1;
    mpz_class out = 0;
    mpz_class rest = x.residue();
    for (long j = 0; j < n && rest != 0; ++j) {
        const long kj = k_map(j);
        if (kj <= prev || kj < j) {
            throw UsageError("schikhof_curve: k_map must be strictly increasing with k_map(j) >= j");
        }
        prev = kj;
        const unsigned long digit = mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(p));
        mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
        if (kj >= n) continue;  // reindexed digit falls above the precision window
        if (digit != 0) out += digit * prime_pow(p, static_cast<int>(kj));
    }
    return ZpInt(p, n, std::move(out));
}

long default_curve_kmap(long j) { return j * j + j; }

DecayTable curve_decay_table(const std::function<long(long)>& k_map, std::uint64_t p,
                             int precision, int m_max, int samples, std::uint64_t seed) {
    DecayTable table{"schikhof_curve", {}};
    for (int m = 1; m <= m_max; ++m) {
        std::optional<DecayRow> worst;
        for (int s = 0; s < samples; ++s) {
            Rng rng = Rng::for_sample(seed ^ 0xc0ffeeULL, static_cast<std::uint64_t>(m) << 32 |
                                                              static_cast<std::uint64_t>(s));
            ZpInt x = zp_random(p, precision, rng, 0);
            // y agrees with x below digit m and differs at digit m.
            ZpInt delta = ZpInt::zero(p, precision);
            while (true) {
                delta = zp_random(p, precision, rng, m);
                NormExp e = val(delta);
                if (e.is_finite() && e.exponent() == m) break;
            }
            ZpInt y = zp_add(x, delta);
            NormExp d = val(zp_sub(schikhof_curve(k_map, x), schikhof_curve(k_map, y)));
            update_worst(worst, m,
                         d.is_finite() ? NormExp::of(d.exponent() - m)
                                       : NormExp::zero_at(d.floor() - m));
        }
        table.rows.push_back(*worst);
    }
    return table;
}

}  // namespace plie
