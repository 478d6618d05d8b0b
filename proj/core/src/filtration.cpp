#include "plie/filtration.hpp"

namespace plie {

bool FiltrationReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed()) return false;
    }
    return true;
}

namespace {

void record(FiltrationCheck& check, CheckOutcome outcome, std::uint64_t index,
            const ChartVector& x, const ChartVector& y, long n, const NormExp& lhs,
            const NormExp& rhs) {
    check.samples += 1;
    switch (outcome) {
        case CheckOutcome::Pass:
            check.passes += 1;
            return;
        case CheckOutcome::PassAtFloor:
            check.passes += 1;
            check.floor_passes += 1;
            return;
        case CheckOutcome::Fail:
            if (!check.counterexample) {
                check.counterexample = FiltrationWitness{index,          x, y, n, lhs.bound(),
                                                         !lhs.is_finite(), rhs.bound()};
            }
            return;
    }
}

}  // namespace

FiltrationReport audit_filtration(const ChartGroup& G, int precision, long sample_count,
                                  std::uint64_t seed) {
    FiltrationReport report;
    report.group = G.name();
    report.prime = G.prime();
    report.precision = precision;
    report.seed = seed;
    report.samples = sample_count;
    report.checks = {
        {"mul_ultrametric", "e(x*y) >= min(e(x), e(y))", 0, 0, 0, std::nullopt},
        {"inversion_second_order", "e(inv(x) + x) >= 2 e(x)", 0, 0, 0, std::nullopt},
        {"translation_bilinear", "e(x*y - x - y) >= e(x) + e(y)", 0, 0, 0, std::nullopt},
        {"commutator_filtration", "e([x,y]) >= e(x) + e(y)", 0, 0, 0, std::nullopt},
        {"integer_power_second_order", "e(x^n - n x) >= 2 e(x)", 0, 0, 0, std::nullopt},
    };

    const long p3 = static_cast<long>(G.prime() * G.prime() * G.prime());
    for (long s = 0; s < sample_count; ++s) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(s));
        // Vary the ball level; include the zero vector now and then.
        const int level = 1 + static_cast<int>(rng.below(4));
        ChartVector x = s % 97 == 0 ? G.zero(precision) : G.random(precision, rng, level);
        ChartVector y = G.random(precision, rng, 1 + static_cast<int>(rng.below(4)));
        const long n = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * p3 + 1))) - p3;

        const NormExp ex = norm_exp(x);
        const NormExp ey = norm_exp(y);
        const std::uint64_t idx = static_cast<std::uint64_t>(s);

        {
            NormExp lhs = norm_exp(G.mul(x, y));
            record(report.checks[0], check_geq(lhs, min(ex, ey)), idx, x, y, 0, lhs, min(ex, ey));
        }
        {
            NormExp lhs = norm_exp(cv_add(G.inv(x), x));
            record(report.checks[1], check_geq(lhs, ex + ex), idx, x, y, 0, lhs, ex + ex);
        }
        {
            NormExp lhs = norm_exp(cv_sub(cv_sub(G.mul(x, y), x), y));
            record(report.checks[2], check_geq(lhs, ex + ey), idx, x, y, 0, lhs, ex + ey);
        }
        {
            NormExp lhs = norm_exp(G.commutator(x, y));
            record(report.checks[3], check_geq(lhs, ex + ey), idx, x, y, 0, lhs, ex + ey);
        }
        {
            NormExp lhs = norm_exp(cv_sub(G.power_int(x, n), cv_scale_long(n, x)));
            record(report.checks[4], check_geq(lhs, ex + ex), idx, x, y, n, lhs, ex + ex);
        }
    }
    return report;
}

}  // namespace plie
