// Microbenchmarks for the hot paths of the library: the discrete transform,
// closed-form spectrum folding, density construction, and the full Fisher
// information pipeline. Grid sizes are swept over the range used in practice.

#include <cmath>
#include <complex>
#include <cstddef>

#include <benchmark/benchmark.h>

#include "fracfisher/distributions.hpp"
#include "fracfisher/information.hpp"
#include "fracfisher/profiles.hpp"
#include "fracfisher/spectral_ops.hpp"

namespace {

using namespace fracfisher;

Grid bench_grid(std::int64_t n) {
    return Grid::make(static_cast<std::size_t>(n), 200.0);
}

void BM_forward_transform(benchmark::State& state) {
    const Grid grid = bench_grid(state.range(0));
    const DensityProfile p = gaussian_density(grid, 1.0);
    const RealProfile f = p.as_real();
    for (auto _ : state) {
        SpectralProfile F = forward_transform(f);
        benchmark::DoNotOptimize(F.samples.data());
    }
}
BENCHMARK(BM_forward_transform)->Arg(4096)->Arg(16384)->Arg(65536);

void BM_fold_spectrum(benchmark::State& state) {
    const Grid grid = bench_grid(state.range(0));
    const SpectrumFn fn = [](double xi) {
        return std::complex<double>(1.0 / (1.0 + std::pow(std::abs(xi), 1.5)), 0.0);
    };
    for (auto _ : state) {
        auto folded = fold_spectrum(grid, fn);
        benchmark::DoNotOptimize(folded.data());
    }
}
BENCHMARK(BM_fold_spectrum)->Arg(4096)->Arg(16384)->Arg(65536);

void BM_density_from_spectrum(benchmark::State& state) {
    const Grid grid = bench_grid(state.range(0));
    const double lambda = 1.5;
    const SpectrumFn fn = [lambda](double xi) {
        return std::complex<double>(1.0 / (1.0 + std::pow(std::abs(xi), lambda)), 0.0);
    };
    for (auto _ : state) {
        DensityProfile p = density_from_spectrum(grid, fn, lambda, 2e-3);
        benchmark::DoNotOptimize(p.samples.data());
    }
}
BENCHMARK(BM_density_from_spectrum)->Arg(4096)->Arg(16384)->Arg(65536);

void BM_relative_fisher(benchmark::State& state) {
    const Grid grid = bench_grid(state.range(0));
    const StableOrder order{1.5};
    const DensityProfile p = linnik_density(grid, order);
    for (auto _ : state) {
        FisherReport rep = relative_fisher(p, order, 1.0);
        benchmark::DoNotOptimize(rep.value);
    }
}
BENCHMARK(BM_relative_fisher)->Arg(4096)->Arg(16384)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
