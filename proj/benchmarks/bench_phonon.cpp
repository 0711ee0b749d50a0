#include <benchmark/benchmark.h>

#include "qemit/phonon_bath.hpp"

using namespace qemit;

namespace {

const PhononBathParams kBath{0.025, 1.49, 4.0};

void BM_PhononPropagator(benchmark::State& state) {
    const double tau = state.range(0) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(phonon_propagator(tau, kBath));
}
BENCHMARK(BM_PhononPropagator)->Arg(5)->Arg(20)->Arg(100);

void BM_FranckCondon(benchmark::State& state) {
    PhononBathParams p = kBath;
    p.temperature = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(franck_condon(p));
}
BENCHMARK(BM_FranckCondon)->Arg(4)->Arg(100);

void BM_PureDephasingRate(benchmark::State& state) {
    PhononBathParams p = kBath;
    p.temperature = static_cast<double>(state.range(0));
    const DephasingParams d{0.019};
    for (auto _ : state) benchmark::DoNotOptimize(pure_dephasing_rate(p, d));
}
BENCHMARK(BM_PureDephasingRate)->Arg(25)->Arg(300);

void BM_PhononContextBuild(benchmark::State& state) {
    for (auto _ : state) {
        PhononContext ctx(kBath, DephasingParams{0.019});
        benchmark::DoNotOptimize(ctx.tau_p());
    }
}
BENCHMARK(BM_PhononContextBuild);

void BM_CorrelationFineGrid(benchmark::State& state) {
    PhononContext ctx(kBath, DephasingParams{0.019});
    for (auto _ : state) {
        std::complex<double> acc = 0.0;
        for (double tau = 0.0; tau <= 15.0; tau += 0.02) acc += ctx.correlation(tau);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_CorrelationFineGrid);

}  // namespace
