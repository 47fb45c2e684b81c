#include <benchmark/benchmark.h>

#include <vector>

#include "sos/bridge.hpp"
#include "sos/contour.hpp"
#include "sos/heat_bath.hpp"
#include "sos/height_field.hpp"
#include "sos/params.hpp"
#include "sos/rng.hpp"
#include "sos/surface_tension.hpp"
#include "sos/wulff.hpp"

namespace {

void BM_HeatBathSweep(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    sos::HeightField field(L, 1, 0, true);
    sos::SweepEngine engine(0.85, true);
    sos::CounterRng rng{12345};
    std::uint64_t sweep = 0;
    for (auto _ : state) {
        engine.sweep(field, rng, sweep++);
        benchmark::DoNotOptimize(field);
    }
    state.SetItemsProcessed(state.iterations() * L * L);
}
BENCHMARK(BM_HeatBathSweep)->Arg(64)->Arg(256)->Arg(1024);

void BM_ContourExtraction(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    sos::HeightField field(L, 1, 0, true);
    sos::SweepEngine engine(0.85, true);
    sos::CounterRng rng{777};
    engine.run(field, rng, 0, 50);
    const sos::ModelParams p = sos::derive_params(0.85, L, 0.55);
    for (auto _ : state) {
        const sos::LoopEnsemble ens = sos::extract_ensemble(field, p, 1);
        benchmark::DoNotOptimize(ens);
    }
}
BENCHMARK(BM_ContourExtraction)->Arg(64)->Arg(256);

void BM_BridgeBuild(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const sos::TiltedBridgeModel m =
            sos::build_bridge(2.0, -8.0 / d, d, 0, 0, 64, true);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_BridgeBuild)->Arg(512)->Arg(2048);

void BM_BridgeSamplePath(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const sos::TiltedBridgeModel m =
        sos::build_bridge(2.0, -8.0 / d, d, 0, 0, 64, true);
    sos::SequentialRng rng(9);
    for (auto _ : state) {
        const std::vector<int> path = m.sample_path(rng);
        benchmark::DoNotOptimize(path);
    }
}
BENCHMARK(BM_BridgeSamplePath)->Arg(512)->Arg(2048);

void BM_SurfaceTensionBuild(benchmark::State& state) {
    for (auto _ : state) {
        const auto m = sos::SurfaceTensionModel::directed_walk(2.0);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_SurfaceTensionBuild);

void BM_WulffShape(benchmark::State& state) {
    const auto m = sos::SurfaceTensionModel::directed_walk(2.0);
    for (auto _ : state) {
        const sos::WulffShape w = sos::WulffShape(m, 720);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_WulffShape);

} // namespace

BENCHMARK_MAIN();
