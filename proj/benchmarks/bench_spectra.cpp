#include <benchmark/benchmark.h>

#include <memory>

#include "qemit/spectra.hpp"

using namespace qemit;

namespace {

struct Fixture {
    std::shared_ptr<const PhononContext> ctx;
    ModeSet modes;
    CorrelationTrace trace;
    FrequencyGrid grid;
};

Fixture make_fixture(int n, double temperature) {
    Fixture f;
    f.ctx = std::make_shared<PhononContext>(PhononBathParams{0.025, 1.49, temperature},
                                            DephasingParams{0.019});
    EmitterChain chain;
    chain.n_emitters = n;
    chain.spacing = 940.0 / 25.0;
    const auto mats = build_matrices(chain, f.ctx->c_inf(), f.ctx->shift());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    rho(0, 0) = 1.0;
    f.modes = mode_spectrum(chain, mats, f.ctx->gamma_pd(), rho);
    const auto tgrid = TimeGrid::for_trace(*f.ctx, f.modes);
    f.trace = g1_collective(tgrid, Method::Concatenation, f.modes, f.ctx);
    f.grid = FrequencyGrid::for_modes(f.modes, Method::Concatenation);
    return f;
}

void BM_TraceGeneration(benchmark::State& state) {
    auto f = make_fixture(static_cast<int>(state.range(0)), 4.0);
    const auto tgrid = TimeGrid::for_trace(*f.ctx, f.modes);
    for (auto _ : state)
        benchmark::DoNotOptimize(g1_collective(tgrid, Method::Concatenation, f.modes, f.ctx));
}
BENCHMARK(BM_TraceGeneration)->Arg(2)->Arg(8);

void BM_ZplSpectrum(benchmark::State& state) {
    auto f = make_fixture(static_cast<int>(state.range(0)), 4.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(zpl_spectrum(f.modes, Method::Concatenation, f.grid));
}
BENCHMARK(BM_ZplSpectrum)->Arg(2)->Arg(8);

void BM_FullSpectrum(benchmark::State& state) {
    auto f = make_fixture(static_cast<int>(state.range(0)), 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(full_spectrum(f.trace, f.grid));
}
BENCHMARK(BM_FullSpectrum)->Arg(2)->Arg(8);

void BM_DeltaMetric(benchmark::State& state) {
    EmitterChain chain;
    chain.n_emitters = 2;
    chain.spacing = 940.0 / 25.0;
    PhononContext ctx(PhononBathParams{0.025, 1.49, 25.0}, DephasingParams{0.019});
    for (auto _ : state) benchmark::DoNotOptimize(delta_metric(chain, ctx));
}
BENCHMARK(BM_DeltaMetric);

}  // namespace

BENCHMARK_MAIN();
