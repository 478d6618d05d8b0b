#include "plie/selftest.hpp"

#include <functional>
#include <set>

#include "plie/filtration.hpp"
#include "plie/lazard.hpp"
#include "plie/probes.hpp"
#include "plie/series.hpp"

namespace plie {

namespace {

struct Ctx {
    SelftestOptions opt;
    std::vector<ChartGroup> groups;

    long count(long full) const {
        const long scaled = static_cast<long>(full * opt.scale);
        return std::max<long>(1, scaled);
    }
};

// A failing comparison needs a short human-readable location.
struct Tally {
    long checked = 0;
    std::string first_failure;

    void fail(const std::string& where) {
        if (first_failure.empty()) first_failure = where;
    }
    bool ok() const { return first_failure.empty(); }
};

bool exp_geq(const NormExp& lhs, const NormExp& rhs) {
    return check_geq(lhs, rhs) != CheckOutcome::Fail;
}

bool exp_equal(const NormExp& lhs, long want) {
    return lhs.is_finite() && lhs.exponent() == want;
}

ChartVector sample(const ChartGroup& G, const Ctx& c, Rng& rng, int min_exp = 1, int spread = 4) {
    return G.random(c.opt.precision, rng, min_exp + static_cast<int>(rng.below(spread)));
}

// --- criterion 1: log against the Mercator / matrix-Mercator series -------

CriterionResult criterion_log_oracle(const Ctx& c) {
    const int m = c.opt.target;
    Tally t;
    for (const char* gname : {"mult", "gl:2"}) {
        ChartGroup G = ChartGroup::parse(gname, c.opt.prime);
        for (long s = 0; s < c.count(200); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0x11, static_cast<std::uint64_t>(s) * 3 +
                                                             (G.dim() == 1 ? 0 : 1));
            ChartVector x = sample(G, c, rng);
            ChartVector got = log_chart(G, x, m).value;
            std::vector<ZpInt> want =
                G.kind() == ChartGroup::Kind::Multiplicative
                    ? std::vector<ZpInt>{log_series(x.coord(0), m)}
                    : log_series_mat(x.coords(), G.matrix_size(), m);
            ++t.checked;
            if (!(cv_truncate(got, m) == ChartVector(G.prime(), m, want))) {
                t.fail(std::string(gname) + " sample " + std::to_string(s));
            }
        }
    }
    return {1, "log matches the truncated series oracle mod p^" + std::to_string(m), t.ok(),
            t.ok() ? std::to_string(t.checked) + " samples" : t.first_failure};
}

// --- criterion 2: exp against the exponential series -----------------------

CriterionResult criterion_exp_oracle(const Ctx& c) {
    const int m = c.opt.target;
    Tally t;
    for (const char* gname : {"mult", "gl:2"}) {
        ChartGroup G = ChartGroup::parse(gname, c.opt.prime);
        for (long s = 0; s < c.count(200); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0x22, static_cast<std::uint64_t>(s) * 5 +
                                                             (G.dim() == 1 ? 0 : 1));
            ChartVector v = sample(G, c, rng);
            ChartVector got = exp_chart(G, v, m).value;
            std::vector<ZpInt> want =
                G.kind() == ChartGroup::Kind::Multiplicative
                    ? std::vector<ZpInt>{exp_series(v.coord(0), m)}
                    : exp_series_mat(v.coords(), G.matrix_size(), m);
            ++t.checked;
            if (!(cv_truncate(got, m) == ChartVector(G.prime(), m, want))) {
                t.fail(std::string(gname) + " sample " + std::to_string(s));
            }
        }
    }
    return {2, "exp matches the truncated series oracle mod p^" + std::to_string(m), t.ok(),
            t.ok() ? std::to_string(t.checked) + " samples" : t.first_failure};
}

// --- criterion 3: exp and log are mutually inverse -------------------------

CriterionResult criterion_inverse_pair(const Ctx& c) {
    const int m = c.opt.target;
    const int n = c.opt.precision;
    Tally t;
    for (const auto& G : c.groups) {
        for (long s = 0; s < c.count(200); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0x33, static_cast<std::uint64_t>(s) * 7 +
                                                             static_cast<std::uint64_t>(G.dim()));
            ChartVector x = sample(G, c, rng);
            ChartVector back = exp_chart(G, cv_lift(log_chart(G, x, m).value, n), m).value;
            ++t.checked;
            if (!eq_mod(cv_truncate(back, m), cv_truncate(x, m), m)) {
                t.fail(G.name() + " exp(log x) sample " + std::to_string(s));
            }
            ChartVector v = sample(G, c, rng);
            ChartVector back2 = log_chart(G, cv_lift(exp_chart(G, v, m).value, n), m).value;
            ++t.checked;
            if (!eq_mod(cv_truncate(back2, m), cv_truncate(v, m), m)) {
                t.fail(G.name() + " log(exp v) sample " + std::to_string(s));
            }
        }
    }
    return {3, "exp(log x) = x and log(exp v) = v mod p^" + std::to_string(m), t.ok(),
            t.ok() ? std::to_string(t.checked) + " round trips" : t.first_failure};
}

// --- criterion 4: isometry suite --------------------------------------------

CriterionResult criterion_isometry(const Ctx& c) {
    const int m = c.opt.target;
    Tally t;
    for (const auto& G : c.groups) {
        for (long s = 0; s < c.count(200); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0x44, static_cast<std::uint64_t>(s) * 11 +
                                                             static_cast<std::uint64_t>(G.dim()));
            ChartVector x = sample(G, c, rng);
            const long ex = norm_exp(x).exponent();
            ++t.checked;
            if (!exp_equal(norm_exp(log_chart(G, x, m).value), ex)) {
                t.fail(G.name() + " e(log x) != e(x) at sample " + std::to_string(s));
            }
            if (!exp_equal(norm_exp(exp_chart(G, x, m).value), ex)) {
                t.fail(G.name() + " e(exp v) != e(v) at sample " + std::to_string(s));
            }
            if (!exp_equal(norm_exp(G.inv(x)), ex)) {
                t.fail(G.name() + " e(inv x) != e(x) at sample " + std::to_string(s));
            }
            if (!exp_equal(norm_exp(tau_p(G, x)), ex + 1)) {
                t.fail(G.name() + " e(tau_p x) != e(x)+1 at sample " + std::to_string(s));
            }
        }
    }
    return {4, "isometries: e(log x) = e(x), e(exp v) = e(v), e(inv x) = e(x), e(tau_p x) = e(x)+1",
            t.ok(), t.ok() ? std::to_string(t.checked) + " samples x 4 maps" : t.first_failure};
}

// --- criterion 5: filtration audit plus p-adic powers ----------------------

CriterionResult criterion_filtration(const Ctx& c) {
    Tally t;
    for (const auto& G : c.groups) {
        FiltrationReport rep =
            audit_filtration(G, c.opt.precision, c.count(500), c.opt.seed ^ 0x55);
        t.checked += rep.samples * 5;
        if (!rep.all_passed()) {
            for (const auto& ch : rep.checks) {
                if (!ch.passed()) t.fail(G.name() + " " + ch.name);
            }
        }
        for (long s = 0; s < c.count(200); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0x56, static_cast<std::uint64_t>(s) * 13 +
                                                             static_cast<std::uint64_t>(G.dim()));
            ChartVector x = sample(G, c, rng);
            ZpInt z = zp_random(G.prime(), c.opt.precision, rng, 0);
            NormExp ex = norm_exp(x);
            NormExp lhs = norm_exp(cv_sub(power_padic(G, x, z), cv_scale(z, x)));
            ++t.checked;
            if (!exp_geq(lhs, ex + ex)) {
                t.fail(G.name() + " e(x^z - z x) < 2e(x) at sample " + std::to_string(s));
            }
        }
    }
    return {5, "filtration audit (5 exponent inequalities) and e(x^z - z x) >= 2 e(x)", t.ok(),
            t.ok() ? std::to_string(t.checked) + " checks" : t.first_failure};
}

// --- criterion 6: one-parameter homomorphism and log scaling ---------------

CriterionResult criterion_homomorphism(const Ctx& c) {
    const int m9 = c.opt.target - 1;
    Tally t;
    for (const auto& G : c.groups) {
        for (long s = 0; s < c.count(200); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0x66, static_cast<std::uint64_t>(s) * 17 +
                                                             static_cast<std::uint64_t>(G.dim()));
            ChartVector x = sample(G, c, rng);
            ZpInt z1 = zp_random(G.prime(), c.opt.precision, rng, 0);
            ZpInt z2 = zp_random(G.prime(), c.opt.precision, rng, 0);
            ChartVector lhs = power_padic(G, x, zp_add(z1, z2));
            ChartVector rhs = G.mul(power_padic(G, x, z1), power_padic(G, x, z2));
            ++t.checked;
            if (!(cv_truncate(lhs, rhs.precision()) == rhs)) {
                t.fail(G.name() + " x^(z1+z2) != x^z1 * x^z2 at sample " + std::to_string(s));
            }
            // log(x^z) = z log(x)
            ChartVector xz = power_padic(G, x, z1);
            if (!xz.is_zero()) {
                ChartVector lhs2 = log_chart(G, xz, m9).value;
                ChartVector rhs2 = cv_scale(z1, log_chart(G, x, m9).value);
                ++t.checked;
                if (!eq_mod(cv_truncate(lhs2, m9), cv_truncate(rhs2, m9), m9)) {
                    t.fail(G.name() + " log(x^z) != z log(x) at sample " + std::to_string(s));
                }
            }
        }
    }
    return {6, "eta_x is a homomorphism (exact) and log(x^z) = z log(x) mod p^" + std::to_string(m9),
            t.ok(), t.ok() ? std::to_string(t.checked) + " checks" : t.first_failure};
}

// --- criterion 7: Trotter sum formula on the Heisenberg group --------------

CriterionResult criterion_trotter(const Ctx& c) {
    const int m9 = c.opt.target - 1;
    const int n_max = 8;
    ChartGroup G = ChartGroup::heisenberg(c.opt.prime);
    Tally t;
    for (long s = 0; s < c.count(100); ++s) {
        Rng rng = Rng::for_sample(c.opt.seed ^ 0x77, static_cast<std::uint64_t>(s));
        ChartVector x = sample(G, c, rng, 1, 2);
        ChartVector y = sample(G, c, rng, 1, 2);
        TrotterResult r = trotter_sum(G, x, y, n_max, m9);
        const long base = std::min(norm_exp(x).exponent(), norm_exp(y).exponent());
        for (int n = 1; n <= n_max; ++n) {
            ++t.checked;
            if (r.distance_exponents[static_cast<std::size_t>(n - 1)] < n + base) {
                t.fail("distance below n + min(e(x),e(y)) at n = " + std::to_string(n) +
                       ", sample " + std::to_string(s));
            }
        }
        ++t.checked;
        if (!eq_mod(cv_truncate(r.value, m9), cv_truncate(cv_add(x, y), m9), m9)) {
            t.fail("t_8 != x + y mod p^" + std::to_string(m9) + " at sample " + std::to_string(s));
        }
    }
    return {7, "Trotter: e(t_n - (x+y)) >= n + min(e(x),e(y)), t_8 = x+y mod p^" + std::to_string(m9),
            t.ok(), t.ok() ? std::to_string(t.checked) + " checks" : t.first_failure};
}

// --- criterion 8: second-kind coordinates round trip ------------------------

CriterionResult criterion_second_kind(const Ctx& c) {
    const int m = c.opt.target;
    Tally t;
    for (const auto& G : c.groups) {
        const auto basis = standard_basis(G, c.opt.precision);
        for (int j : {0, 1}) {
            const int zprec = m - j - 1;
            for (long s = 0; s < c.count(100); ++s) {
                Rng rng = Rng::for_sample(c.opt.seed ^ 0x88,
                                          static_cast<std::uint64_t>(s) * 19 +
                                              static_cast<std::uint64_t>(G.dim() * 2 + j));
                std::vector<ZpInt> z;
                for (int i = 0; i < G.dim(); ++i) {
                    z.push_back(zp_random(G.prime(), c.opt.precision, rng, 0));
                }
                ChartVector g = second_kind(G, basis, j, z, m);
                std::vector<ZpInt> back = second_kind_inverse(G, basis, j, g, m);
                for (int i = 0; i < G.dim(); ++i) {
                    ++t.checked;
                    if (!(truncate(z[static_cast<std::size_t>(i)], zprec) ==
                          truncate(back[static_cast<std::size_t>(i)], zprec))) {
                        t.fail(G.name() + " j=" + std::to_string(j) + " coordinate " +
                               std::to_string(i) + " sample " + std::to_string(s));
                    }
                }
            }
        }
    }
    return {8, "second_kind_inverse o second_kind = id mod p^(M-j-1), j in {0,1}", t.ok(),
            t.ok() ? std::to_string(t.checked) + " coordinates" : t.first_failure};
}

// --- criterion 9: Lazard certificates with witness replay -------------------

CriterionResult criterion_lazard(const Ctx& c) {
    Tally t;
    for (const auto& G : c.groups) {
        const auto basis = standard_basis(G, c.opt.precision);
        LazardCertificate l1 =
            audit_L1(G, c.opt.precision, 6, c.count(200), c.opt.seed ^ 0x99);
        LazardCertificate l2 = audit_L2(G, basis, c.opt.precision, 0, c.count(100),
                                        c.opt.target, c.opt.seed ^ 0x9a);
        LazardCertificate l3 = audit_L3(G, c.opt.precision, c.count(100), c.opt.seed ^ 0x9b);
        t.checked += l1.samples + l2.samples + l3.samples;
        if (!l1.pass) t.fail(G.name() + " L1: " + l1.failure_detail);
        if (!l2.pass) t.fail(G.name() + " L2: " + l2.failure_detail);
        if (!l3.pass) t.fail(G.name() + " L3: " + l3.failure_detail);
        if (!replay_certificate(l1, G)) t.fail(G.name() + " L1 replay failed");
        if (!replay_certificate(l2, G, basis)) t.fail(G.name() + " L2 replay failed");
        if (!replay_certificate(l3, G)) t.fail(G.name() + " L3 replay failed");
    }
    return {9, "Lazard L1 (depth 6), L2, L3 certificates pass and replay exactly", t.ok(),
            t.ok() ? std::to_string(t.checked) + " witnesses" : t.first_failure};
}

// --- criterion 10: calculus probes ------------------------------------------

CriterionResult criterion_probes(const Ctx& c) {
    const std::uint64_t p = c.opt.prime;
    const int n = c.opt.precision;
    Tally t;

    // strict differentiability of tau_p at 0 with derivative p id.
    for (const char* gname : {"mult", "heis"}) {
        ChartGroup G = ChartGroup::parse(gname, p);
        std::vector<ZpInt> pid(static_cast<std::size_t>(G.dim() * G.dim()), ZpInt::zero(p, n));
        for (int i = 0; i < G.dim(); ++i) {
            pid[static_cast<std::size_t>(i * G.dim() + i)] =
                ZpInt::from_long(p, n, static_cast<long>(p));
        }
        DecayTable table = strict_diff_probe(probe_tau_p(G), G.zero(n), pid, 8,
                                             static_cast<int>(c.count(25)), c.opt.seed ^ 0xaa);
        for (const auto& row : table.rows) {
            ++t.checked;
            if (row.ratio_exponent < row.scale + 1) {
                t.fail(std::string(gname) + " tau_p ratio row m=" + std::to_string(row.scale));
            }
        }
    }

    // second order Taylor expansion of exp on the multiplicative group, with
    // coefficients from the series oracle: a_1 = (1+exp(x)) u, a_2 = a_1 u / 2.
    {
        ChartGroup G = ChartGroup::multiplicative(p);
        // The coefficients need more digits than the comparison target so
        // that they never cap the remainder's precision.
        const int m_tgt = std::min(14, n - 10);
        CoefficientFn a1 = [m_tgt](const ChartVector& x, const ChartVector& u) {
            ZpInt ex = exp_series(x.coord(0), m_tgt);
            ZpInt deriv = zp_add(ZpInt::one(x.prime(), ex.precision()), ex);
            return ChartVector(x.prime(), std::min(deriv.precision(), u.precision()),
                               {zp_mul(deriv, u.coord(0))});
        };
        CoefficientFn a2 = [m_tgt](const ChartVector& x, const ChartVector& u) {
            ZpInt ex = exp_series(x.coord(0), m_tgt);
            ZpInt deriv = zp_add(ZpInt::one(x.prime(), ex.precision()), ex);
            ZpInt half = zp_inv(ZpInt::from_long(x.prime(), u.precision(), 2));
            ZpInt u2 = zp_mul(u.coord(0), u.coord(0));
            return ChartVector(x.prime(), std::min(deriv.precision(), u.precision()),
                               {zp_mul(zp_mul(deriv, u2), half)});
        };
        DecayTable table = taylor_probe(probe_exp_adaptive(G, c.opt.target), G.zero(n), {a1, a2}, 6,
                                        static_cast<int>(c.count(25)), c.opt.seed ^ 0xab);
        // Strictly increasing until the remainder vanishes at the precision
        // floor; at least three informative rows.
        long finite_rows = 0;
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            if (table.rows[i].floored) break;
            ++finite_rows;
            ++t.checked;
            if (i > 0 && !(table.rows[i].ratio_exponent > table.rows[i - 1].ratio_exponent)) {
                t.fail("taylor table not strictly increasing at m=" +
                       std::to_string(table.rows[i].scale));
            }
        }
        if (finite_rows < 3) t.fail("taylor table floored too early");
    }

    // Schikhof curve: injectivity and superlinear difference-quotient decay.
    {
        std::set<std::string> seen_in, seen_out;
        Rng rng(c.opt.seed ^ 0xac);
        long distinct = 0;
        for (long s = 0; s < c.count(1000); ++s) {
            ZpInt x = zp_random(p, n, rng, 0);
            std::string key = truncate(x, 4).residue_string();
            if (!seen_in.insert(key).second) continue;  // need inputs distinct mod p^4
            ++distinct;
            ZpInt gx = schikhof_curve(&default_curve_kmap, x);
            if (!seen_out.insert(gx.residue_string()).second) {
                t.fail("curve collision at sample " + std::to_string(s));
            }
        }
        t.checked += distinct;

        DecayTable table = curve_decay_table(&default_curve_kmap, p, n, 6,
                                             static_cast<int>(c.count(40)), c.opt.seed ^ 0xad);
        for (const auto& row : table.rows) {
            ++t.checked;
            const long want = default_curve_kmap(row.scale) - row.scale;  // = m^2
            if (!row.floored && row.ratio_exponent < want) {
                t.fail("curve decay below m^2 at m=" + std::to_string(row.scale));
            }
        }
    }

    return {10, "probes: strict-diff of tau_p (rows >= m+1), 2nd order exp Taylor, Schikhof curve",
            t.ok(), t.ok() ? std::to_string(t.checked) + " rows/samples" : t.first_failure};
}

// --- criterion 11: convergence accounting -----------------------------------

CriterionResult criterion_convergence(const Ctx& c) {
    const int m = c.opt.target;
    const int n = c.opt.precision;
    Tally t;
    for (const auto& G : c.groups) {
        for (long s = 0; s < c.count(100); ++s) {
            Rng rng = Rng::for_sample(c.opt.seed ^ 0xbb, static_cast<std::uint64_t>(s) * 23 +
                                                             static_cast<std::uint64_t>(G.dim()));
            ChartVector x = sample(G, c, rng);
            const long ex = norm_exp(x).exponent();
            for (const auto& r : {log_chart(G, x, m).report, exp_chart(G, x, m).report}) {
                ++t.checked;
                if (r.out_precision != n - r.stabilized_at) {
                    t.fail(G.name() + " N_out != N - n* at sample " + std::to_string(s));
                }
                if (r.stabilized_at > m) {
                    t.fail(G.name() + " n* > M at sample " + std::to_string(s));
                }
                // Telescoping floor: every distance gains a full digit per
                // step over the 2e(x)-1 base. (Raw per-step monotonicity can
                // spike-and-recover at p = 3, where tau(w) - pw = w^2(3+w)
                // picks up extra cancellation; the floor is what telescoping
                // guarantees.)
                for (std::size_t i = 0; i < r.steps.size(); ++i) {
                    if (r.floored[i]) continue;
                    if (r.steps[i] < 2 * ex + static_cast<long>(i) - 1) {
                        t.fail(G.name() + " distance below telescoping floor at sample " +
                               std::to_string(s));
                    }
                }
            }
        }
    }
    return {11, "convergence accounting: N_out = N - n*, telescoping distance floor, n* <= M",
            t.ok(), t.ok() ? std::to_string(t.checked) + " reports" : t.first_failure};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt) {
    if (!is_supported_prime(opt.prime)) {
        throw UsageError("selftest: p must be an odd prime >= 3");
    }
    if (opt.precision < 2 * opt.target) {
        throw UsageError("selftest: precision must be >= 2 * target");
    }
    Ctx c{opt,
          {ChartGroup::multiplicative(opt.prime), ChartGroup::gl_congruence(opt.prime, 2),
           ChartGroup::heisenberg(opt.prime)}};

    std::vector<std::function<CriterionResult(const Ctx&)>> criteria = {
        criterion_log_oracle,  criterion_exp_oracle,  criterion_inverse_pair,
        criterion_isometry,    criterion_filtration,  criterion_homomorphism,
        criterion_trotter,     criterion_second_kind, criterion_lazard,
        criterion_probes,      criterion_convergence,
    };

    std::vector<CriterionResult> results;
    int id = 1;
    for (const auto& run : criteria) {
        try {
            results.push_back(run(c));
        } catch (const std::exception& ex) {
            results.push_back({id, "criterion " + std::to_string(id), false,
                               std::string("exception: ") + ex.what()});
        }
        id += 1;
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace plie
