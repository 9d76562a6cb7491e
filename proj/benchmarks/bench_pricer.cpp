#include <benchmark/benchmark.h>

#include "bimerton/cases.hpp"
#include "bimerton/convolve.hpp"
#include "bimerton/grid.hpp"
#include "bimerton/kernel.hpp"
#include "bimerton/pricer.hpp"

using namespace bimerton;

namespace {

GridSpec bench_grid(int N, int M = 50) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    return build_grid(validate(c.params), {90.0, 90.0}, {c.half_width, c.half_width}, N, N, M);
}

void BM_KernelBuild(benchmark::State& state) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    const DerivedModel m = validate(c.params);
    const GridSpec g = bench_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_kernel(m, g, default_epsilon(g.dtau)));
}

void BM_ConvolveStep(benchmark::State& state) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    const DerivedModel m = validate(c.params);
    const GridSpec g = bench_grid(static_cast<int>(state.range(0)));
    const auto mode = static_cast<EmbedMode>(state.range(1));
    const SpectralKernel spec = plan(build_kernel(m, g, default_epsilon(g.dtau)), g, mode);
    ConvolutionWorkspace ws(spec);
    const TrapezoidWeights phi = trapezoid_weights(g);
    const ValueSurface s = init_surface({PayoffKind::PutOnMin, c.strike}, g);
    for (auto _ : state) benchmark::DoNotOptimize(convolve_step(spec, s, phi, ws));
    state.SetLabel(std::string(to_string(mode)) + " L=" + std::to_string(spec.Lx()));
}

void BM_AmericanPrice(benchmark::State& state) {
    const CaseSpec c = case_spec(CaseId::CaseI);
    const GridSpec g = bench_grid(static_cast<int>(state.range(0)), 20);
    for (auto _ : state)
        benchmark::DoNotOptimize(price(c.params, {PayoffKind::PutOnMin, c.strike}, g).price);
}

}  // namespace

BENCHMARK(BM_KernelBuild)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveStep)
    ->ArgsProduct({{64, 128, 256},
                   {static_cast<int>(EmbedMode::Exact), static_cast<int>(EmbedMode::Compact),
                    static_cast<int>(EmbedMode::Padded)}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AmericanPrice)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
