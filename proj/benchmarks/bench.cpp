#include <benchmark/benchmark.h>

#include "ergolab/model.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/simulate.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/strategy.hpp"

namespace {

using namespace ergolab;

constexpr double kDt = 0x1.0p-10;
constexpr double kHorizon = 64.0;  // 65536 steps per path

SimConfig bench_config() {
    SimConfig cfg;
    cfg.dt = kDt;
    cfg.horizon = kHorizon;
    cfg.seed = 42;
    return cfg;
}

// Path stepping with the threshold fast path (no indirect call per step).
void BM_PathThreshold(benchmark::State& state) {
    ModelParams params;
    const Strategy strategy = make_threshold(params, 2.0, 0.0);
    const SimConfig cfg = bench_config();
    std::uint64_t path = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_single_path(params, strategy, cfg, path++));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(kHorizon / kDt));
}
BENCHMARK(BM_PathThreshold)->Unit(benchmark::kMillisecond);

// Same dynamics through an opaque callable: the cost of losing the fast path.
void BM_PathGeneralCallable(benchmark::State& state) {
    ModelParams params;
    const Strategy strategy =
        make_general([](double x) { return x > 0.0 ? 2.0 : 0.0; }, "opaque threshold");
    const SimConfig cfg = bench_config();
    std::uint64_t path = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_single_path(params, strategy, cfg, path++));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(kHorizon / kDt));
}
BENCHMARK(BM_PathGeneralCallable)->Unit(benchmark::kMillisecond);

void BM_NormalDraws(benchmark::State& state) {
    PathRng rng(7, 0);
    double sum = 0.0;
    for (auto _ : state) {
        for (int i = 0; i < 4096; ++i) sum += rng.normal();
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_NormalDraws);

void BM_FokkerPlanckSolve(benchmark::State& state) {
    ModelParams params;
    const Strategy strategy = make_threshold(params, 3.0, 0.0);
    const auto cells = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_fokker_planck(params, strategy, 20.0, cells));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cells));
}
BENCHMARK(BM_FokkerPlanckSolve)->Arg(4000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
