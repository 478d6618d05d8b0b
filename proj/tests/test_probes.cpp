#include <doctest.h>

#include "plie/probes.hpp"
#include "plie/series.hpp"

using namespace plie;

namespace {

const int N = 24;

ChartVector mvec(std::uint64_t p, long v, int prec = N) {
    return ChartVector(p, prec, {ZpInt::from_long(p, prec, v)});
}

}  // namespace

TEST_CASE("diff_quotient: identity, linear maps, tau_p leading term") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    Rng rng(50);
    ChartVector x = mult.random(N, rng, 2);
    ChartVector y = mult.random(N, rng, 2);
    while (y.is_zero()) y = mult.random(N, rng, 2);
    QpScalar t = QpScalar::from_unit(1, ZpInt::from_long(5, N, 3));  // t = 3p

    // f = id: quotient is y at reduced precision
    ChartVector q = diff_quotient(probe_identity(), x, y, t);
    CHECK(q == cv_truncate(y, q.precision()));
    CHECK(q.precision() == N - 1);  // division by t costs val(t) digits

    // f = scale by c: quotient is c y, independent of x and t
    ZpInt c = ZpInt::from_long(5, N, 7);
    ChartVector qc = diff_quotient(probe_scale(c), x, y, t);
    CHECK(qc == cv_truncate(cv_scale(c, y), qc.precision()));

    // f = tau_p: quotient = p y + higher order (binomial expansion)
    ChartVector qt = diff_quotient(probe_tau_p(mult), x, y, t);
    NormExp d = dist_exp(qt, cv_truncate(cv_scale_long(5, y), qt.precision()));
    CHECK(check_geq(d, norm_exp(x) + norm_exp(y)) != CheckOutcome::Fail);

    CHECK_THROWS_AS(diff_quotient(probe_identity(), x, y, QpScalar::zero(5)), UsageError);
}

TEST_CASE("strict_diff_probe: tau_p decays one digit beyond scale") {
    for (const char* gname : {"mult", "heis"}) {
        ChartGroup G = ChartGroup::parse(gname, 5);
        std::vector<ZpInt> pid(static_cast<std::size_t>(G.dim() * G.dim()), ZpInt::zero(5, N));
        for (int i = 0; i < G.dim(); ++i) {
            pid[static_cast<std::size_t>(i * G.dim() + i)] = ZpInt::from_long(5, N, 5);
        }
        DecayTable t = strict_diff_probe(probe_tau_p(G), G.zero(N), pid, 8, 20, 51);
        REQUIRE(t.rows.size() == 8);
        for (const auto& row : t.rows) CHECK(row.ratio_exponent >= row.scale + 1);
    }
}

TEST_CASE("strict_diff_probe: identity against id floors out") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    std::vector<ZpInt> id{ZpInt::one(5, N)};
    DecayTable t = strict_diff_probe(probe_identity(), mult.zero(N), id, 5, 10, 52);
    for (const auto& row : t.rows) CHECK(row.floored);
}

TEST_CASE("strict_diff_probe: log at a nonzero base point with the series derivative") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    // d/dx log(1+x) = (1+x)^-1 at x0 = 5
    ChartVector x0 = mvec(5, 5);
    std::vector<ZpInt> deriv{zp_inv(ZpInt::from_long(5, N, 6))};
    DecayTable t = strict_diff_probe(probe_log(mult, 10), x0, deriv, 6, 15, 53);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        if (t.rows[i].floored || t.rows[i - 1].floored) continue;
        CHECK(t.rows[i].ratio_exponent >= t.rows[i - 1].ratio_exponent);
    }
    CHECK(t.rows[2].ratio_exponent > t.rows[0].ratio_exponent);
}

TEST_CASE("taylor_probe: first order on a linear map floors out") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    ZpInt c = ZpInt::from_long(5, N, 7);
    CoefficientFn a1 = [c](const ChartVector&, const ChartVector& u) { return cv_scale(c, u); };
    DecayTable t = taylor_probe(probe_scale(c), mult.zero(N), {a1}, 5, 10, 54);
    for (const auto& row : t.rows) CHECK(row.floored);
}

TEST_CASE("taylor_probe: tau_p on the Heisenberg group to second order") {
    // tau_p(x) = p x + (0, 0, C(p,2) a b) exactly, so a_1 = p u and
    // a_2(x, u) = (0, 0, C(p,2) u_a u_b) plus the mixed term from expanding at x:
    // tau_p(x + u) - tau_p(x) = p u + C(p,2)(0,0, a u_b + u_a b + u_a u_b).
    const std::uint64_t p = 5;
    ChartGroup heis = ChartGroup::heisenberg(p);
    const long choose2 = static_cast<long>(p * (p - 1) / 2);
    CoefficientFn a1 = [choose2](const ChartVector& x, const ChartVector& u) {
        ZpInt c2 = ZpInt::from_long(x.prime(), u.precision(), choose2);
        ZpInt mixed = zp_mul(c2, zp_add(zp_mul(x.coord(0), u.coord(1)),
                                        zp_mul(u.coord(0), x.coord(1))));
        ChartVector pu = cv_scale_long(static_cast<long>(x.prime()), u);
        return ChartVector(x.prime(), pu.precision(),
                           {pu.coord(0), pu.coord(1), zp_add(pu.coord(2), mixed)});
    };
    CoefficientFn a2 = [choose2](const ChartVector& x, const ChartVector& u) {
        ZpInt c2 = ZpInt::from_long(x.prime(), u.precision(), choose2);
        ZpInt quad = zp_mul(c2, zp_mul(u.coord(0), u.coord(1)));
        return ChartVector(x.prime(), u.precision(),
                           {ZpInt::zero(x.prime(), u.precision()),
                            ZpInt::zero(x.prime(), u.precision()), quad});
    };
    DecayTable t = taylor_probe(probe_tau_p(heis), heis.zero(N), {a1, a2}, 5, 15, 55);
    // the expansion is exact: every remainder vanishes at the precision floor
    for (const auto& row : t.rows) CHECK(row.floored);
}

TEST_CASE("taylor_probe: exp to second order with series coefficients increases") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    const int coeff_target = 14;
    CoefficientFn a1 = [coeff_target](const ChartVector& x, const ChartVector& u) {
        ZpInt ex = exp_series(x.coord(0), coeff_target);
        ZpInt d = zp_add(ZpInt::one(5, ex.precision()), ex);
        return ChartVector(5, std::min(d.precision(), u.precision()), {zp_mul(d, u.coord(0))});
    };
    CoefficientFn a2 = [coeff_target](const ChartVector& x, const ChartVector& u) {
        ZpInt ex = exp_series(x.coord(0), coeff_target);
        ZpInt d = zp_add(ZpInt::one(5, ex.precision()), ex);
        ZpInt half = zp_inv(ZpInt::from_long(5, u.precision(), 2));
        return ChartVector(5, std::min(d.precision(), u.precision()),
                           {zp_mul(zp_mul(d, zp_mul(u.coord(0), u.coord(0))), half)});
    };
    DecayTable t = taylor_probe(probe_exp_adaptive(mult, 10), mult.zero(N), {a1, a2}, 5, 15, 56);
    long finite = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].floored) break;
        ++finite;
        if (i > 0) CHECK(t.rows[i].ratio_exponent > t.rows[i - 1].ratio_exponent);
    }
    CHECK(finite >= 3);
}

TEST_CASE("multilin_perturb_check: linear case, matrix product, u = v") {
    // n = 1, beta = id on Z_p^2: reduces to e(u - v) >= eps
    MultilinFn id1 = [](const std::vector<std::vector<ZpInt>>& a) { return a[0]; };
    CHECK(multilin_perturb_check(id1, 1, 2, 0, 3, 200, 5, N, 57).passed());

    // 2x2 matrix multiplication as a bilinear map of norm exponent 0
    MultilinFn matmul = [](const std::vector<std::vector<ZpInt>>& args) {
        const auto& a = args[0];
        const auto& b = args[1];
        return std::vector<ZpInt>{zp_add(zp_mul(a[0], b[0]), zp_mul(a[1], b[2])),
                                  zp_add(zp_mul(a[0], b[1]), zp_mul(a[1], b[3])),
                                  zp_add(zp_mul(a[2], b[0]), zp_mul(a[3], b[2])),
                                  zp_add(zp_mul(a[2], b[1]), zp_mul(a[3], b[3]))};
    };
    MultilinReport r = multilin_perturb_check(matmul, 2, 4, 0, 2, 500, 5, N, 58);
    CHECK(r.passed());
    CHECK(r.samples == 500);

    // eps at the precision floor: u = v, all differences vanish
    MultilinReport floor = multilin_perturb_check(matmul, 2, 4, 0, N, 50, 5, N, 59);
    CHECK(floor.passed());
    CHECK(floor.samples == 50);
}

TEST_CASE("schikhof_curve: worked example, zero, monotonicity validation") {
    CHECK(schikhof_curve(&default_curve_kmap, ZpInt::zero(5, 20)).is_zero());

    // gamma(1 + 2*5) = 1 + 2*25 = 51 with k_0 = 0, k_1 = 2
    CHECK(schikhof_curve(&default_curve_kmap, ZpInt(5, 20, 11)).residue() == 51);

    auto bad = [](long) { return 3L; };  // not strictly increasing
    CHECK_THROWS_AS(schikhof_curve(bad, ZpInt(5, 20, 11)), UsageError);
    auto below = [](long j) { return j - 1; };  // k_map(j) < j
    CHECK_THROWS_AS(schikhof_curve(below, ZpInt(5, 20, 11)), UsageError);
}

TEST_CASE("schikhof_curve: injective on inputs distinct in surviving digits") {
    Rng rng(60);
    std::vector<ZpInt> inputs;
    std::vector<mpz_class> outputs;
    for (int i = 0; i < 1000; ++i) {
        ZpInt x = zp_random(5, 20, rng, 0);
        bool fresh = true;
        for (const auto& seen : inputs) {
            if (truncate(seen, 4) == truncate(x, 4)) {
                fresh = false;
                break;
            }
        }
        if (!fresh) continue;
        inputs.push_back(x);
        outputs.push_back(schikhof_curve(&default_curve_kmap, x).residue());
    }
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        for (std::size_t j = i + 1; j < outputs.size(); ++j) {
            CHECK(outputs[i] != outputs[j]);
        }
    }
}

TEST_CASE("curve_decay_table: quotient exponents grow superlinearly") {
    DecayTable t = curve_decay_table(&default_curve_kmap, 5, N, 4, 40, 61);
    for (const auto& row : t.rows) {
        CHECK(!row.floored);
        CHECK(row.ratio_exponent == row.scale * row.scale);  // k_map(m) - m exactly
    }
}
