#include <benchmark/benchmark.h>

#include "distrecon/experiments.hpp"
#include "distrecon/invariants.hpp"
#include "distrecon/recon.hpp"

#include <random>

using namespace distrecon;

namespace {

PointConfig<Rat> generic(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PointConfig<Rat> p;
    p.dim = 2;
    for (int i = 0; i < 2 * n; ++i) p.coords.emplace_back(static_cast<long>(rng() % 100000));
    return p;
}

void BM_eval_g_double(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    GArguments<double> a;
    for (auto& v : a) v = u(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_g(a));
        a[0] += 1e-9;  // defeat hoisting
    }
}
BENCHMARK(BM_eval_g_double);

void BM_eval_g_exact(benchmark::State& state) {
    GArguments<Rat> a{Rat(49), Rat(26), Rat(20), Rat(89), Rat(125), Rat(18)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_g(a));
    }
}
BENCHMARK(BM_eval_g_exact);

void BM_enumeration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_combinations_count(n));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(count_combinations(n)));
}
BENCHMARK(BM_enumeration)->Arg(4)->Arg(5)->Arg(6);

void BM_test_exact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto p = generic(n, 0xB000 + static_cast<unsigned>(n));
    TestOptions opt;
    opt.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(test_reconstructible_2d(p, opt));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(count_combinations(n)));
}
BENCHMARK(BM_test_exact)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_lattice(benchmark::State& state) {
    const int box = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice_experiment(box, 1));
    }
}
BENCHMARK(BM_lattice)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
