#include <benchmark/benchmark.h>

#include "plie/explog.hpp"

namespace {

using namespace plie;

constexpr std::uint64_t kPrime = 5;
constexpr int kPrec = 24;
constexpr int kTarget = 10;

ChartGroup group_for(int kind) {
    switch (kind) {
        case 0: return ChartGroup::multiplicative(kPrime);
        case 1: return ChartGroup::gl_congruence(kPrime, 2);
        default: return ChartGroup::heisenberg(kPrime);
    }
}

void BM_ZpMul(benchmark::State& state) {
    Rng rng(1);
    ZpInt a = zp_random(kPrime, kPrec, rng, 0);
    ZpInt b = zp_random(kPrime, kPrec, rng, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(zp_mul(a, b));
    }
}
BENCHMARK(BM_ZpMul);

void BM_ZpInv(benchmark::State& state) {
    Rng rng(2);
    ZpInt a = zp_random(kPrime, kPrec, rng, 0);
    while (!val(a).is_finite() || val(a).exponent() != 0) a = zp_random(kPrime, kPrec, rng, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(zp_inv(a));
    }
}
BENCHMARK(BM_ZpInv);

void BM_GroupMul(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    Rng rng(3);
    ChartVector x = g.random(kPrec, rng, 1);
    ChartVector y = g.random(kPrec, rng, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.mul(x, y));
    }
}
BENCHMARK(BM_GroupMul)->DenseRange(0, 2);

void BM_TauP(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    Rng rng(4);
    ChartVector x = g.random(kPrec, rng, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tau_p(g, x));
    }
}
BENCHMARK(BM_TauP)->DenseRange(0, 2);

void BM_PthRoot(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    Rng rng(5);
    ChartVector x = tau_p(g, g.random(kPrec, rng, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pth_root(g, x));
    }
}
BENCHMARK(BM_PthRoot)->DenseRange(0, 2);

void BM_PowerPadic(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    Rng rng(6);
    ChartVector x = g.random(kPrec, rng, 1);
    ZpInt z = zp_random(kPrime, kPrec, rng, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(power_padic(g, x, z));
    }
}
BENCHMARK(BM_PowerPadic)->DenseRange(0, 2);

void BM_LogChart(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    Rng rng(7);
    ChartVector x = g.random(kPrec, rng, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_chart(g, x, kTarget));
    }
}
BENCHMARK(BM_LogChart)->DenseRange(0, 2);

void BM_ExpChart(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    Rng rng(8);
    ChartVector x = g.random(kPrec, rng, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_chart(g, x, kTarget));
    }
}
BENCHMARK(BM_ExpChart)->DenseRange(0, 2);

void BM_TrotterTerm(benchmark::State& state) {
    ChartGroup g = ChartGroup::heisenberg(kPrime);
    Rng rng(9);
    ChartVector x = g.random(kPrec, rng, 1);
    ChartVector y = g.random(kPrec, rng, 1);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(trotter_sum(g, x, y, n, kTarget - 1));
    }
}
BENCHMARK(BM_TrotterTerm)->Arg(2)->Arg(4)->Arg(8);

void BM_SecondKindInverse(benchmark::State& state) {
    ChartGroup g = group_for(static_cast<int>(state.range(0)));
    auto basis = standard_basis(g, kPrec);
    Rng rng(10);
    ChartVector target = g.random(kPrec, rng, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(second_kind_inverse(g, basis, 0, target, kTarget));
    }
}
BENCHMARK(BM_SecondKindInverse)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
