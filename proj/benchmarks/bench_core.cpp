#include <benchmark/benchmark.h>

#include "mbg/experiments.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/solver.hpp"
#include "mbg/strategies.hpp"

using namespace mbg;

static void BM_BuildRadoBoard(benchmark::State& state) {
    const linear_system sys = ap_system(3);
    const int64_t n = state.range(0);
    for (auto _ : state) {
        hypergraph h = build_rado_hypergraph(sys, n, solution_mode::proper());
        benchmark::DoNotOptimize(h.edge_count());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_BuildRadoBoard)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_MaxPairDegree(benchmark::State& state) {
    const hypergraph h = ap_hypergraph(3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(h.max_ell_degree(2));
}
BENCHMARK(BM_MaxPairDegree)->RangeMultiplier(4)->Range(128, 2048);

static void BM_Rank(benchmark::State& state) {
    rng_t rng(1);
    int_matrix a(6, int_vector(8));
    for (auto& row : a)
        for (auto& x : row) x = static_cast<long>(uniform_below(rng, 21)) - 10;
    for (auto _ : state) benchmark::DoNotOptimize(rank(a));
}
BENCHMARK(BM_Rank);

static void BM_MaxOneDensity(benchmark::State& state) {
    const linear_system sys = ap_system(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(max_one_density(sys.a).value.get_d());
}
BENCHMARK(BM_MaxOneDensity)->DenseRange(4, 7);

static void BM_EsBreakerGame(benchmark::State& state) {
    const hypergraph board = ap_hypergraph(3, state.range(0));
    const int q = static_cast<int>(2 * std::sqrt(static_cast<double>(state.range(0))));
    uint64_t seed = 0;
    for (auto _ : state) {
        random_maker maker;
        es_breaker breaker;
        benchmark::DoNotOptimize(play(board, q, maker, breaker, seed++).result);
    }
}
BENCHMARK(BM_EsBreakerGame)->RangeMultiplier(2)->Range(256, 1024);

static void BM_ExactSolver(benchmark::State& state) {
    const hypergraph board = ap_hypergraph(3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve(board, 2));
}
BENCHMARK(BM_ExactSolver)->DenseRange(8, 11);

BENCHMARK_MAIN();
