#include <benchmark/benchmark.h>

#include "centagg/aggregators.hpp"
#include "centagg/mlp.hpp"
#include "centagg/rng.hpp"
#include "centagg/verify.hpp"

namespace {

using namespace centagg;

Layout layout_of(int n, int t, int d, std::uint64_t seed) {
    Rng rng(seed);
    Layout layout;
    layout.n = n;
    layout.t = t;
    layout.d = d;
    for (int i = 0; i < n; ++i) {
        Vector v(static_cast<std::size_t>(d));
        for (auto& x : v) x = rng.normal();
        layout.received.push_back({i, std::move(v)});
    }
    return layout;
}

void BM_MinEnclosingBall(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    Rng rng(11);
    std::vector<Vector> pts;
    for (int i = 0; i < m; ++i) {
        Vector v(static_cast<std::size_t>(d));
        for (auto& x : v) x = rng.normal();
        pts.push_back(std::move(v));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_enclosing_ball(pts, 1e-4));
    }
}
BENCHMARK(BM_MinEnclosingBall)->Args({120, 10})->Args({120, 1000})->Args({120, 25818});

void BM_CoveringBall(benchmark::State& state) {
    Layout layout = layout_of(10, 3, static_cast<int>(state.range(0)), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(covering_ball(layout, 1e-2));
    }
}
BENCHMARK(BM_CoveringBall)->Arg(10)->Arg(1000)->Arg(25818);

void BM_AggregateMda(benchmark::State& state) {
    Layout layout = layout_of(10, 3, static_cast<int>(state.range(0)), 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aggregate_mda(layout));
    }
}
BENCHMARK(BM_AggregateMda)->Arg(10)->Arg(25818);

void BM_AggregateBox(benchmark::State& state) {
    Layout layout = layout_of(10, 3, static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aggregate_box(layout));
    }
}
BENCHMARK(BM_AggregateBox)->Arg(10)->Arg(25818);

void BM_ForwardLossGrad(benchmark::State& state) {
    MLPConfig cfg{{784, 32, 16, 10}, 3};
    ModelParams params = init_model(cfg);
    Rng rng(8);
    Dataset data;
    data.class_count = 10;
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
        Vector v(784);
        for (auto& x : v) x = rng.uniform();
        data.features.push_back(std::move(v));
        data.labels.push_back(static_cast<int>(rng.uniform_int(0, 9)));
        idx.push_back(i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_loss_grad(params, data, idx));
    }
}
BENCHMARK(BM_ForwardLossGrad)->Arg(32)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
