#include <random>

#include <benchmark/benchmark.h>

#include "toral/coding.hpp"
#include "toral/dimension.hpp"
#include "toral/estimate.hpp"
#include "toral/layout.hpp"

using namespace toral;

static void BM_CountConstrainedWindows(benchmark::State& state) {
    const Sft S = golden_mean_shift();
    const ConstraintSpec c{0.25, 2, 5, S.lambda};
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_constrained_windows(S, c, m));
}
BENCHMARK(BM_CountConstrainedWindows)->Arg(10)->Arg(20)->Arg(40);

static void BM_BruteForceOracle(benchmark::State& state) {
    const Sft S = golden_mean_shift();
    const ConstraintSpec c{0.25, 2, 5, S.lambda};
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_oracle(S, c, 8));
}
BENCHMARK(BM_BruteForceOracle);

static void BM_CylinderRegion(benchmark::State& state) {
    const PreparedPartition P(catalog("cat").second);
    const int m = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    const SymbolicWindow w = random_admissible_window(P.trans.gamma, -m, m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(cylinder_region(P, w));
}
BENCHMARK(BM_CylinderRegion)->Arg(5)->Arg(20)->Arg(50);

static void BM_DimensionGrid(benchmark::State& state) {
    for (auto _ : state) {
        double acc = 0;
        for (int i = 0; i <= 1000; ++i) acc += dim_uniform(i / 3000.0);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_DimensionGrid);

static void BM_UpperBoundDim(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(upper_bound_dim(0.2));
}
BENCHMARK(BM_UpperBoundDim);

static void BM_BuildLayoutAndSweep(benchmark::State& state) {
    LayoutParams p;
    p.alpha = Rational(1, 4);
    p.theta = parse_rational("3.414214");
    p.n1 = p.theta;
    p.K = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const BlockLayout L = build_layout(p);
        benchmark::DoNotOptimize(free_count(L, checkpoint(L, p.K - 1).m));
    }
}
BENCHMARK(BM_BuildLayoutAndSweep)->Arg(8)->Arg(26);
BENCHMARK_MAIN();
