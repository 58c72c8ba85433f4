#include "dampwave/kernels.hpp"
#include "dampwave/linear.hpp"
#include "dampwave/radial.hpp"
#include "dampwave/semilinear.hpp"
#include "dampwave/spectral.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace dampwave;

namespace {

RealField gaussian(const GridSpec& g, double amplitude, double width) {
    RealField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        double r2 = 0.0;
        for (int d = 0; d < g.n; ++d) r2 += std::pow(g.coordinate(idx[d]), 2);
        f.values[i] = amplitude * std::exp(-r2 / (width * width));
    }
    return f;
}

void BM_KernelValues(benchmark::State& state) {
    ModelSpec m{2, 0.5, 2.0 + 0.3 * state.range(0)};
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_values(m, r, 7.5, 0.01));
        r = (r > 50.0) ? 0.01 : r * 1.07;
    }
}
BENCHMARK(BM_KernelValues)->Arg(-1)->Arg(0)->Arg(1);

void BM_ForwardTransform(benchmark::State& state) {
    GridSpec g{2, static_cast<int>(state.range(0)), 64.0};
    auto u = gaussian(g, 1.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(forward_transform(u));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_ForwardTransform)->Arg(128)->Arg(512)->Arg(1024);

void BM_RoundTrip3d(benchmark::State& state) {
    GridSpec g{3, static_cast<int>(state.range(0)), 32.0};
    auto u = gaussian(g, 1.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(forward_transform(u)));
}
BENCHMARK(BM_RoundTrip3d)->Arg(32)->Arg(64);

void BM_Propagate(benchmark::State& state) {
    GridSpec g{2, static_cast<int>(state.range(0)), 64.0};
    ModelSpec m{2, 0.5, 2.0};
    auto s = to_spectral(State(RealField(g), gaussian(g, 1.0, 1.0)));
    for (auto _ : state) benchmark::DoNotOptimize(propagate(m, s, 10.0));
}
BENCHMARK(BM_Propagate)->Arg(128)->Arg(512);

void BM_EtdStep(benchmark::State& state) {
    GridSpec g{2, static_cast<int>(state.range(0)), 32.0};
    ModelSpec m{2, 0.5, 2.0};
    Nonlinearity nl;
    nl.p = 3.0;
    StepperConfig cfg;
    cfg.dt = 0.01;
    EtdStepper stepper(m, nl, g, cfg);
    auto s = to_spectral(State(gaussian(g, 0.1, 1.0), RealField(g)));
    std::vector<double> u;
    stepper.physical_u(s, u);
    for (auto _ : state) {
        stepper.step(s, u);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_EtdStep)->Arg(64)->Arg(128)->Arg(256);

void BM_RadialNorm(benchmark::State& state) {
    ModelSpec m{3, 1.0, 1.0};
    auto v1 = RadialProfile::gaussian(3, 1.0, 1.0);
    const double t = std::pow(10.0, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(radial_norm(m, 0, 0.0, RadialProfile::zero(), v1, t));
}
BENCHMARK(BM_RadialNorm)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
