#include <benchmark/benchmark.h>

#include <random>

#include "eigenbar/bottleneck.hpp"
#include "eigenbar/indicatrix.hpp"
#include "eigenbar/persistence.hpp"
#include "eigenbar/trig_poly.hpp"

using namespace eigenbar;

namespace {

void BM_BarcodeRandomPoly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto field = random_trig_poly(32.0, 7).to_field(build_flat_torus_grid(n));
    for (auto _ : state) benchmark::DoNotOptimize(compute_barcode(field));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n) * n);
}
BENCHMARK(BM_BarcodeRandomPoly)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_IndicatrixProfile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto field = random_trig_poly(32.0, 7).to_field(build_flat_torus_grid(n));
    for (auto _ : state) benchmark::DoNotOptimize(indicatrix_profile(field));
}
BENCHMARK(BM_IndicatrixProfile)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

Barcode random_diagram(std::mt19937_64& rng, int bars) {
    std::uniform_real_distribution<double> birth(-1.0, 1.0), len(0.0, 0.5);
    Barcode b;
    for (int i = 0; i < bars; ++i) {
        const double s = birth(rng);
        b.bars.push_back(Bar::finite(s, s + len(rng), i % 2));
    }
    b.bars.push_back(Bar::essential(-1.0, 0));
    return b;
}

void BM_Bottleneck(benchmark::State& state) {
    std::mt19937_64 rng(11);
    const int bars = static_cast<int>(state.range(0));
    const auto a = random_diagram(rng, bars);
    const auto b = random_diagram(rng, bars);
    for (auto _ : state) benchmark::DoNotOptimize(bottleneck_distance(a, b));
}
BENCHMARK(BM_Bottleneck)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
