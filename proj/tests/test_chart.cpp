#include <doctest.h>

#include "plie/filtration.hpp"

using namespace plie;

namespace {

const int N = 24;

std::vector<ChartGroup> all_groups(std::uint64_t p) {
    return {ChartGroup::multiplicative(p), ChartGroup::gl_congruence(p, 2),
            ChartGroup::heisenberg(p)};
}

ChartVector vec(const ChartGroup& G, std::vector<long> coords, int prec = N) {
    std::vector<ZpInt> c;
    for (long v : coords) c.push_back(ZpInt::from_long(G.prime(), prec, v));
    return ChartVector(G.prime(), prec, std::move(c));
}

// direct 2x2 oracle for the GL-congruence product A + B + AB
ChartVector gl2_mul_oracle(const ChartVector& a, const ChartVector& b) {
    auto at = [](const ChartVector& v, int i) { return v.coord(i); };
    ZpInt p00 = zp_add(zp_mul(at(a, 0), at(b, 0)), zp_mul(at(a, 1), at(b, 2)));
    ZpInt p01 = zp_add(zp_mul(at(a, 0), at(b, 1)), zp_mul(at(a, 1), at(b, 3)));
    ZpInt p10 = zp_add(zp_mul(at(a, 2), at(b, 0)), zp_mul(at(a, 3), at(b, 2)));
    ZpInt p11 = zp_add(zp_mul(at(a, 2), at(b, 1)), zp_mul(at(a, 3), at(b, 3)));
    std::vector<ZpInt> out{zp_add(zp_add(at(a, 0), at(b, 0)), p00),
                           zp_add(zp_add(at(a, 1), at(b, 1)), p01),
                           zp_add(zp_add(at(a, 2), at(b, 2)), p10),
                           zp_add(zp_add(at(a, 3), at(b, 3)), p11)};
    return ChartVector(a.prime(), a.precision(), std::move(out));
}

}  // namespace

TEST_CASE("mul: identities and worked examples") {
    for (const auto& G : all_groups(5)) {
        Rng rng(10);
        ChartVector x = G.random(N, rng, 1);
        CHECK(G.mul(x, G.zero(N)) == x);
        CHECK(G.mul(G.zero(N), x) == x);
    }

    ChartGroup mult = ChartGroup::multiplicative(5);
    CHECK(mult.mul(vec(mult, {5}), vec(mult, {10})).coord(0).residue() == 65);

    ChartGroup gl = ChartGroup::gl_congruence(5, 2);
    ChartVector a = vec(gl, {5, 0, 0, 0});
    ChartVector b = vec(gl, {0, 5, 0, 0});
    ChartVector prod = gl.mul(a, b);
    CHECK(prod == gl2_mul_oracle(a, b));
    CHECK(prod.coord(0).residue() == 5);
    CHECK(prod.coord(1).residue() == 30);
    CHECK(prod.coord(2).residue() == 0);
    CHECK(prod.coord(3).residue() == 0);

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        ChartVector u = gl.random(N, rng, 1), v = gl.random(N, rng, 1);
        CHECK(gl.mul(u, v) == gl2_mul_oracle(u, v));
    }
}

TEST_CASE("mul rejects out-of-chart and mismatched operands") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    ChartVector unit = vec(mult, {7});  // valuation 0: not in the ball
    CHECK_THROWS_AS(mult.mul(unit, vec(mult, {5})), OutOfChart);
    ChartGroup mult7 = ChartGroup::multiplicative(7);
    CHECK_THROWS_AS(mult.mul(vec(mult, {5}), vec(mult7, {7})), UsageError);
    ChartGroup heis = ChartGroup::heisenberg(5);
    CHECK_THROWS_AS(mult.mul(vec(mult, {5}), vec(heis, {5, 5, 5})), UsageError);
}

TEST_CASE("inv: identities, geometric-series oracle, isometry") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    CHECK(mult.inv(mult.zero(N)) == mult.zero(N));

    // i(x) = -x (1+x)^-1
    ChartVector x = vec(mult, {5});
    ZpInt expected = zp_neg(zp_mul(ZpInt::from_long(5, N, 5), zp_inv(ZpInt::from_long(5, N, 6))));
    CHECK(mult.inv(x).coord(0) == expected);

    for (const auto& G : all_groups(7)) {
        Rng rng(12);
        for (int i = 0; i < 200; ++i) {
            ChartVector u = G.random(N, rng, 1 + static_cast<int>(rng.below(4)));
            ChartVector iu = G.inv(u);
            // group inverse, exactly at precision
            CHECK(G.mul(u, iu).is_zero());
            CHECK(G.mul(iu, u).is_zero());
            // surjective isometry
            CHECK(norm_exp(iu).bound() == norm_exp(u).bound());
            // second-order bound e(inv(x) + x) >= 2 e(x)
            CHECK(check_geq(norm_exp(cv_add(iu, u)), norm_exp(u) + norm_exp(u)) !=
                  CheckOutcome::Fail);
        }
    }
}

TEST_CASE("commutator: aligned with the nilpotent c-coordinate oracle") {
    ChartGroup heis = ChartGroup::heisenberg(5);
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        ChartVector x = heis.random(N, rng, 1), y = heis.random(N, rng, 1);
        CHECK(heis.commutator(x, x).is_zero());
        ChartVector c = heis.commutator(x, y);
        // [x, y] = (0, 0, a b' - a' b)
        CHECK(c.coord(0).is_zero());
        CHECK(c.coord(1).is_zero());
        ZpInt want = zp_sub(zp_mul(x.coord(0), y.coord(1)), zp_mul(y.coord(0), x.coord(1)));
        CHECK(c.coord(2) == want);
        CHECK(check_geq(norm_exp(c), norm_exp(x) + norm_exp(y)) != CheckOutcome::Fail);
    }

    ChartGroup mult = ChartGroup::multiplicative(5);
    for (int i = 0; i < 50; ++i) {
        CHECK(mult.commutator(mult.random(N, rng, 1), mult.random(N, rng, 1)).is_zero());
    }
}

TEST_CASE("power_int: binomial oracle on the multiplicative chart") {
    ChartGroup mult = ChartGroup::multiplicative(5);
    ChartVector x = vec(mult, {5});
    CHECK(mult.power_int(x, 0).is_zero());
    CHECK(mult.power_int(x, 1) == x);
    CHECK(mult.power_int(x, 2).coord(0).residue() == 35);

    // chart value of x^n is (1 + x)^n - 1
    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        ChartVector u = mult.random(N, rng, 1);
        const long n = static_cast<long>(rng.below(200)) - 100;
        mpz_class base = u.coord(0).residue() + 1;
        mpz_class want;
        if (n >= 0) {
            mpz_powm_ui(want.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n),
                        prime_pow(5, N).get_mpz_t());
        } else {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), prime_pow(5, N).get_mpz_t());
            mpz_powm_ui(want.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(-n),
                        prime_pow(5, N).get_mpz_t());
        }
        want -= 1;
        CHECK(mult.power_int(u, n) == ChartVector(5, N, {ZpInt(5, N, want)}));
        // ||x^n|| <= ||x||
        CHECK(check_geq(norm_exp(mult.power_int(u, n)), norm_exp(u)) != CheckOutcome::Fail);
    }
}

TEST_CASE("group laws hold exactly at precision for all kinds") {
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        for (const auto& G : all_groups(p)) {
            Rng rng(15);
            for (int i = 0; i < 60; ++i) {
                ChartVector x = G.random(N, rng, 1 + static_cast<int>(rng.below(3)));
                ChartVector y = G.random(N, rng, 1 + static_cast<int>(rng.below(3)));
                ChartVector z = G.random(N, rng, 1 + static_cast<int>(rng.below(3)));
                CHECK(G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)));
            }
        }
    }
}

TEST_CASE("ball closure and translation identity") {
    for (const auto& G : all_groups(5)) {
        Rng rng(16);
        for (int i = 0; i < 150; ++i) {
            const int s = 1 + static_cast<int>(rng.below(5));
            ChartVector x = G.random(N, rng, s), y = G.random(N, rng, s);
            CHECK(norm_exp(G.mul(x, y)).bound() >= s);
            CHECK(norm_exp(G.inv(x)).bound() >= s);
            // e(x*y - x - y) >= e(x) + e(y), the coset identity at exponent level
            NormExp lhs = norm_exp(cv_sub(cv_sub(G.mul(x, y), x), y));
            CHECK(check_geq(lhs, norm_exp(x) + norm_exp(y)) != CheckOutcome::Fail);
            // left/right uniformity agree to first order
            NormExp comm = norm_exp(cv_sub(G.mul(x, y), G.mul(y, x)));
            CHECK(check_geq(comm, norm_exp(x) + norm_exp(y)) != CheckOutcome::Fail);
        }
    }
}

TEST_CASE("gl:3 behaves as a group and parse validates names") {
    ChartGroup gl3 = ChartGroup::parse("gl:3", 5);
    CHECK(gl3.dim() == 9);
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        ChartVector x = gl3.random(N, rng, 1), y = gl3.random(N, rng, 1), z = gl3.random(N, rng, 1);
        CHECK(gl3.mul(gl3.mul(x, y), z) == gl3.mul(x, gl3.mul(y, z)));
        CHECK(gl3.mul(x, gl3.inv(x)).is_zero());
    }

    CHECK_THROWS_AS(ChartGroup::parse("gl:junk", 5), UsageError);
    CHECK_THROWS_AS(ChartGroup::parse("gl:", 5), UsageError);
    CHECK_THROWS_AS(ChartGroup::parse("so:3", 5), UsageError);
}

TEST_CASE("audit_filtration passes on all groups and reports floors") {
    for (const auto& G : all_groups(5)) {
        FiltrationReport rep = audit_filtration(G, N, 500, 2024);
        CHECK(rep.all_passed());
        CHECK(rep.checks.size() == 5);
        for (const auto& c : rep.checks) CHECK(c.samples == 500);
    }
    // the sample stream includes zero vectors; those pass at the floor
    FiltrationReport rep = audit_filtration(ChartGroup::heisenberg(3), N, 500, 77);
    CHECK(rep.all_passed());
    long floors = 0;
    for (const auto& c : rep.checks) floors += c.floor_passes;
    CHECK(floors > 0);
}
