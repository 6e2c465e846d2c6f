#include "dctpa/config.hpp"
#include "dctpa/detector.hpp"
#include "dctpa/harness.hpp"

#include <benchmark/benchmark.h>

using namespace dctpa;

namespace {

Setup base_setup(std::size_t n_bins)
{
    RunConfig cfg = preset_config("fig2a");
    cfg.grid.n_bins = n_bins;
    return build_setup(cfg);
}

void BM_CrossSpectrum(benchmark::State& state)
{
    const auto setup = base_setup(static_cast<std::size_t>(state.range(0)));
    const DownConverter dc(setup.source);
    auto rng = realization_engine(1, 0);
    const auto pair = dc.generate(setup.pump, rng);
    CrossSpectrum cross(setup.grid);
    SpectralField out(setup.grid.sum_grid());
    for (auto _ : state) {
        cross.set_signal(pair.signal);
        cross.set_idler(pair.idler);
        cross.compute(out);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_CrossSpectrum)->Arg(4096)->Arg(16384);

void BM_DrawRealization(benchmark::State& state)
{
    const auto setup = base_setup(static_cast<std::size_t>(state.range(0)));
    const DownConverter dc(setup.source);
    std::uint64_t index = 0;
    for (auto _ : state) {
        auto rng = realization_engine(1, index++);
        benchmark::DoNotOptimize(dc.generate(setup.pump, rng));
    }
}
BENCHMARK(BM_DrawRealization)->Arg(4096)->Arg(16384);

void BM_ScanPoint(benchmark::State& state)
{
    const auto setup = base_setup(4096);
    const DownConverter dc(setup.source);
    const std::vector<ScanPoint> points{{setup.pump.center_omega, PhaseMask::delay(1e-14), {}}};
    const std::size_t r = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scan_ensemble(dc, setup.pump, setup.transition, points, {r, 1, 1, 0}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(r));
}
BENCHMARK(BM_ScanPoint)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
