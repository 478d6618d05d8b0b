#include <doctest.h>

#include "plie/explog.hpp"
#include "plie/series.hpp"

using namespace plie;

namespace {

const int N = 24;
const int M = 10;

std::vector<ChartGroup> all_groups(std::uint64_t p) {
    return {ChartGroup::multiplicative(p), ChartGroup::gl_congruence(p, 2),
            ChartGroup::heisenberg(p)};
}

}  // namespace

TEST_CASE("log_chart: zero, Mercator oracle, matrix-Mercator oracle") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    ExpLogResult z = log_chart(mult, mult.zero(N), M);
    CHECK(z.value.is_zero());
    CHECK(z.report.stabilized_at == 0);
    CHECK(z.report.out_precision == N);

    ChartVector x(5, N, {ZpInt::from_long(5, N, 5)});
    CHECK(truncate(log_chart(mult, x, M).value.coord(0), M) == log_series(x.coord(0), M));

    ChartGroup gl = ChartGroup::gl_congruence(5, 2);
    Rng rng(30);
    for (int i = 0; i < 40; ++i) {
        ChartVector a = gl.random(N, rng, 1);
        if (a.is_zero()) continue;
        ChartVector got = cv_truncate(log_chart(gl, a, M).value, M);
        CHECK(got == ChartVector(5, M, log_series_mat(a.coords(), 2, M)));
    }
}

TEST_CASE("exp_chart: zero, exponential series oracle") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    CHECK(exp_chart(mult, mult.zero(N), M).value.is_zero());

    ChartVector v(5, N, {ZpInt::from_long(5, N, 5)});
    CHECK(truncate(exp_chart(mult, v, M).value.coord(0), M) == exp_series(v.coord(0), M));

    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        ChartVector u = mult.random(N, rng, 1);
        if (u.is_zero()) continue;
        CHECK(truncate(exp_chart(mult, u, M).value.coord(0), M) == exp_series(u.coord(0), M));
    }
}

TEST_CASE("log/exp: isometry, first-order normalization, inverse pair") {
    for (const auto& G : all_groups(7)) {
        Rng rng(32);
        for (int i = 0; i < 60; ++i) {
            ChartVector x = G.random(N, rng, 1 + static_cast<int>(rng.below(4)));
            if (x.is_zero()) continue;
            ExpLogResult lg = log_chart(G, x, M);
            ExpLogResult ex = exp_chart(G, x, M);
            const long e = norm_exp(x).exponent();
            CHECK(norm_exp(lg.value).exponent() == e);
            CHECK(norm_exp(ex.value).exponent() == e);
            // e(log x - x) >= 2 e(x) and e(exp v - v) >= 2 e(v)
            CHECK(check_geq(dist_exp(cv_truncate(x, lg.value.precision()), lg.value),
                            NormExp::of(2 * e)) != CheckOutcome::Fail);
            CHECK(check_geq(dist_exp(cv_truncate(x, ex.value.precision()), ex.value),
                            NormExp::of(2 * e)) != CheckOutcome::Fail);
            // inverse pair through the canonical lift
            ChartVector back = exp_chart(G, cv_lift(lg.value, N), M).value;
            CHECK(eq_mod(cv_truncate(back, M), cv_truncate(x, M), M));
        }
    }
}

TEST_CASE("log/exp: inverse pair on gl:3") {
    ChartGroup gl3 = ChartGroup::gl_congruence(5, 3);
    Rng rng(45);
    for (int i = 0; i < 20; ++i) {
        ChartVector x = gl3.random(N, rng, 1);
        if (x.is_zero()) continue;
        ChartVector back = exp_chart(gl3, cv_lift(log_chart(gl3, x, M).value, N), M).value;
        CHECK(eq_mod(cv_truncate(back, M), cv_truncate(x, M), M));
        CHECK(norm_exp(log_chart(gl3, x, M).value).bound() == norm_exp(x).bound());
    }
}

TEST_CASE("log_chart: telescoping steps gain a digit per step") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    Rng rng(33);
    for (int i = 0; i < 50; ++i) {
        ChartVector x = mult.random(N, rng, 1);
        if (x.is_zero()) continue;
        ExpLogResult r = log_chart(mult, x, M);
        const long e = norm_exp(x).exponent();
        CHECK(r.report.out_precision == N - r.report.stabilized_at);
        for (std::size_t j = 0; j < r.report.steps.size(); ++j) {
            if (r.report.floored[j]) continue;
            CHECK(r.report.steps[j] >= 2 * e + static_cast<long>(j) - 1);
        }
    }
}

TEST_CASE("log/exp refuse too-small working precision") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    ChartVector x(5, 12, {ZpInt::from_long(5, 12, 5)});  // e = 1 needs 2M digits
    CHECK_THROWS_AS(log_chart(mult, x, 10), UsageError);
    CHECK_THROWS_AS(exp_chart(mult, x, 10), UsageError);
    // deep inputs need less
    ChartVector deep(5, 12, {ZpInt::from_long(5, 12, 5 * 5 * 5 * 5 * 5)});
    CHECK_NOTHROW(log_chart(mult, deep, 10));
}

TEST_CASE("one_param: zero, one, homomorphism in z") {
    for (const auto& G : all_groups(5)) {
        Rng rng(34);
        ChartVector v = G.random(N, rng, 1);
        CHECK(one_param(G, v, ZpInt::zero(5, N), M).is_zero());
        CHECK(one_param(G, v, ZpInt::one(5, N), M) == exp_chart(G, v, M).value);
        for (int i = 0; i < 25; ++i) {
            ChartVector u = G.random(N, rng, 1 + static_cast<int>(rng.below(3)));
            ZpInt z1 = zp_random(5, N, rng, 0), z2 = zp_random(5, N, rng, 0);
            ChartVector lhs = one_param(G, u, zp_add(z1, z2), M);
            ChartVector rhs = G.mul(one_param(G, u, z1, M), one_param(G, u, z2, M));
            const int prec = std::min({lhs.precision(), rhs.precision(), M});
            CHECK(eq_mod(cv_truncate(lhs, prec), cv_truncate(rhs, prec), prec));
            // first-order contract e(exp(z u) - z u) >= 2 e(u)
            ChartVector zu = cv_scale(z1, u);
            if (zu.is_zero()) continue;
            ChartVector ou = one_param(G, u, z1, M);
            const int cp = std::min(zu.precision(), ou.precision());
            NormExp d = dist_exp(cv_truncate(zu, cp), cv_truncate(ou, cp));
            CHECK(check_geq(d, norm_exp(u) + norm_exp(u)) != CheckOutcome::Fail);
        }
    }
}

TEST_CASE("log scaling law: log(x^z) = z log(x)") {
    for (const auto& G : all_groups(5)) {
        Rng rng(35);
        for (int i = 0; i < 40; ++i) {
            ChartVector x = G.random(N, rng, 1);
            if (x.is_zero()) continue;
            ZpInt z = zp_random(5, N, rng, 0);
            ChartVector xz = power_padic(G, x, z);
            if (xz.is_zero()) continue;
            ChartVector lhs = log_chart(G, xz, M - 1).value;
            ChartVector rhs = cv_scale(z, log_chart(G, x, M - 1).value);
            CHECK(eq_mod(cv_truncate(lhs, M - 1), cv_truncate(rhs, M - 1), M - 1));
        }
    }
}

TEST_CASE("trotter_sum: identity edge, abelian series cross-check") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    Rng rng(36);
    ChartVector x = mult.random(N, rng, 1);
    // term accuracy grows like n + 2e(x) + 2, so compare at n_max = 6
    TrotterResult r = trotter_sum(mult, x, mult.zero(N), 6, M - 1);
    CHECK(eq_mod(cv_truncate(r.value, M - 1), cv_truncate(x, M - 1), M - 1));

    // abelian: log((1+a)(1+b)) = log(1+a) + log(1+b); the limit is exact at
    // every n, so t_4 already equals x + y
    for (int i = 0; i < 30; ++i) {
        ChartVector a = mult.random(N, rng, 1), b = mult.random(N, rng, 1);
        if (a.is_zero() || b.is_zero()) continue;
        TrotterResult t = trotter_sum(mult, a, b, 6, M - 1);
        // series composition needs headroom beyond the comparison target
        ZpInt series = zp_add(log_series(exp_series(a.coord(0), M + 2), M - 1),
                              log_series(exp_series(b.coord(0), M + 2), M - 1));
        // the series sum reproduces a + b, the trotter limit
        CHECK(truncate(zp_add(a.coord(0), b.coord(0)), M - 1) == truncate(series, M - 1));
        CHECK(eq_mod(cv_truncate(t.value, M - 1), cv_truncate(cv_add(a, b), M - 1), M - 1));
    }
}

TEST_CASE("trotter_sum: noncommutative limit is the coordinate sum") {
    ChartGroup heis = ChartGroup::heisenberg(5);
    Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        ChartVector x = heis.random(N, rng, 1), y = heis.random(N, rng, 1);
        if (x.is_zero() || y.is_zero()) continue;
        if (heis.mul(x, y) == cv_add(x, y)) continue;  // want genuinely noncommuting inputs
        TrotterResult r = trotter_sum(heis, x, y, 8, M - 1);
        CHECK(eq_mod(cv_truncate(r.value, M - 1), cv_truncate(cv_add(x, y), M - 1), M - 1));
        const long base = std::min(norm_exp(x).exponent(), norm_exp(y).exponent());
        for (int n = 1; n <= 8; ++n) {
            CHECK(r.distance_exponents[static_cast<std::size_t>(n - 1)] >= n + base);
        }
    }
}

TEST_CASE("trotter_sum: roots-first route agrees where it has digits") {
    ChartGroup heis = ChartGroup::heisenberg(5);
    Rng rng(38);
    for (int i = 0; i < 10; ++i) {
        ChartVector x = heis.random(N, rng, 1), y = heis.random(N, rng, 1);
        // the roots-first route spends ~target more digits, so cross-check
        // at a lower target where both have room
        TrotterResult a = trotter_sum(heis, x, y, 2, 7, TrotterRoute::LogFirst);
        TrotterResult b = trotter_sum(heis, x, y, 2, 7, TrotterRoute::RootsFirst);
        const int prec = std::min({a.value.precision(), b.value.precision(), 7});
        CHECK(eq_mod(cv_truncate(a.value, prec), cv_truncate(b.value, prec), prec));
    }
}

TEST_CASE("second_kind: zero, single-factor case, first-order contract") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    auto basis = standard_basis(mult, N);
    CHECK(second_kind(mult, basis, 1, {ZpInt::zero(5, N)}, M).is_zero());

    // d = 1: psi(z) = exp(z p^j e_1)
    Rng rng(39);
    for (int j : {0, 1}) {
        for (int i = 0; i < 15; ++i) {
            ZpInt z = zp_random(5, N, rng, 0);
            ChartVector psi = second_kind(mult, basis, j, {z}, M);
            ChartVector direct = one_param(mult, cv_mul_pow_p(basis[0], j), z, M);
            const int prec = std::min({psi.precision(), direct.precision(), M});
            CHECK(eq_mod(cv_truncate(psi, prec), cv_truncate(direct, prec), prec));
        }
    }

    // Heisenberg: psi(z) - p^j sum z_i e_i has exponent >= 2(j+1)
    ChartGroup heis = ChartGroup::heisenberg(5);
    auto hbasis = standard_basis(heis, N);
    for (int j : {0, 1}) {
        for (int i = 0; i < 50; ++i) {
            std::vector<ZpInt> z;
            for (int k = 0; k < 3; ++k) z.push_back(zp_random(5, N, rng, 0));
            ChartVector psi = second_kind(heis, hbasis, j, z, M);
            ChartVector lin = heis.zero(N);
            for (int k = 0; k < 3; ++k) {
                lin = cv_add(lin, cv_scale(z[static_cast<std::size_t>(k)],
                                           cv_mul_pow_p(hbasis[static_cast<std::size_t>(k)], j)));
            }
            NormExp d = dist_exp(cv_truncate(lin, psi.precision()), psi);
            CHECK(check_geq(d, NormExp::of(2 * (j + 1))) != CheckOutcome::Fail);
        }
    }
}

TEST_CASE("second_kind_inverse: round trip, zero target, series cross-check") {
    for (const auto& G : all_groups(3)) {
        auto basis = standard_basis(G, N);
        Rng rng(40);
        for (int j : {0, 1}) {
            for (int i = 0; i < 25; ++i) {
                std::vector<ZpInt> z;
                for (int k = 0; k < G.dim(); ++k) z.push_back(zp_random(3, N, rng, 0));
                ChartVector g = second_kind(G, basis, j, z, M);
                std::vector<ZpInt> back = second_kind_inverse(G, basis, j, g, M);
                for (int k = 0; k < G.dim(); ++k) {
                    CHECK(truncate(z[static_cast<std::size_t>(k)], M - j - 1) ==
                          truncate(back[static_cast<std::size_t>(k)], M - j - 1));
                }
            }
            std::vector<ZpInt> zero =
                second_kind_inverse(G, basis, j, G.zero(N), M);
            for (const auto& zi : zero) CHECK(zi.is_zero());
        }
    }

    // d = 1: z = log(g) / p^(j+1), via the series oracle
    ChartGroup mult = ChartGroup::multiplicative(5);
    auto basis = standard_basis(mult, N);
    Rng rng(41);
    for (int j : {0, 1}) {
        for (int i = 0; i < 20; ++i) {
            ChartVector g = mult.random(N, rng, j + 1);
            if (!norm_exp(g).is_finite() || norm_exp(g).exponent() != j + 1) continue;
            std::vector<ZpInt> z = second_kind_inverse(mult, basis, j, g, M);
            ZpInt want = div_pow_p(log_series(g.coord(0), M), j + 1);
            CHECK(truncate(z[0], M - j - 1) == truncate(want, M - j - 1));
        }
    }
}

TEST_CASE("second_kind rejects degenerate bases and out-of-ball targets") {
    ChartGroup heis = ChartGroup::heisenberg(5);
    auto basis = standard_basis(heis, N);
    // degenerate: two identical basis vectors
    auto bad = basis;
    bad[1] = bad[0];
    std::vector<ZpInt> z(3, ZpInt::zero(5, N));
    CHECK_THROWS_AS(second_kind(heis, bad, 0, z, M), SingularBasis);

    // target outside the level-j+1 ball
    Rng rng(43);
    ChartVector g = heis.random(N, rng, 1);
    while (!norm_exp(g).is_finite() || norm_exp(g).exponent() != 1) g = heis.random(N, rng, 1);
    CHECK_THROWS_AS(second_kind_inverse(heis, basis, 1, g, M), OutOfDomain);
}
