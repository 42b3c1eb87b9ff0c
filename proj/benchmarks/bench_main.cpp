#include <benchmark/benchmark.h>

#include <random>

#include "dyadnet/discrepancy.hpp"
#include "dyadnet/formulas.hpp"
#include "dyadnet/haar.hpp"
#include "dyadnet/netgen.hpp"

using namespace dyadnet;

namespace {

Bits pattern_bits(int len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Bits b(static_cast<std::size_t>(len));
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

DyadicPointSet net_for(int n) {
    return generate_pa_direct(n, pattern_bits(n - 1, 17), pattern_bits(n, 18));
}

}  // namespace

static void BM_generate_points(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    NetSpec spec;
    spec.family = Family::PA;
    spec.n = n;
    spec.a = pattern_bits(n - 1, 17);
    spec.shift = pattern_bits(n, 18);
    for (auto _ : state) {
        auto p = generate(spec);
        benchmark::DoNotOptimize(p);
    }
    state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_generate_points)->Arg(8)->Arg(12)->Arg(16);

static void BM_warnock(benchmark::State& state) {
    const auto pts = net_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto v = warnock_l2_squared(pts);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_warnock)->Arg(6)->Arg(8)->Arg(10);

static void BM_parseval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto pts = net_for(n);
    for (auto _ : state) {
        auto v = parseval_l2_squared(pts, n);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_parseval)->Arg(6)->Arg(8)->Arg(10);

static void BM_formula(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Bits a = pattern_bits(n - 1, 17);
    const Bits s = pattern_bits(n, 18);
    for (auto _ : state) {
        auto v = l2sq_pa(n, a, s);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_formula)->Arg(10)->Arg(100)->Arg(1000);

static void BM_star(benchmark::State& state) {
    const auto pts = net_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto v = star_discrepancy(pts);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_star)->Arg(5)->Arg(7)->Arg(8);

static void BM_haar_coefficient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto pts = net_for(n);
    const HaarIndex idx{n / 2, n / 2 - 1, 1, 0};
    for (auto _ : state) {
        auto v = haar_coefficient(pts, idx);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_haar_coefficient)->Arg(8)->Arg(12);

static void BM_lp_mc(benchmark::State& state) {
    const auto pts = net_for(6);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto v = lp_discrepancy_mc(pts, 2.0, 10000, seed++);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_lp_mc);

BENCHMARK_MAIN();
