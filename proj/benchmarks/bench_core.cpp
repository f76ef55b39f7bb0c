#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "eisense/eisense.hpp"

using namespace eisense;

namespace {

const CircuitParams kCell{10e3, 1e-6, 40e-12, 10e-12, 10e-6};

void BM_CellSpectrum(benchmark::State& state) {
    SweepConfig cfg;
    cfg.points = static_cast<int>(state.range(0));
    const auto grid = log_sweep(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(cell_spectrum(kCell, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CellSpectrum)->Arg(201)->Arg(2001);

void BM_OlsFit(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise;
    std::vector<double> xs(static_cast<std::size_t>(state.range(0))), ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = static_cast<double>(i);
        ys[i] = 1.69 * xs[i] + 0.86 + noise(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(ols_fit(xs, ys));
}
BENCHMARK(BM_OlsFit)->Arg(8)->Arg(1000);

void BM_CircuitFit(benchmark::State& state) {
    SweepConfig cfg;
    cfg.noise_rel = 0.01;
    cfg.seed = 3;
    const auto data = to_spectrum(simulate_sweep(kCell, cfg));
    CircuitParams guess = kCell;
    guess.r_sol *= 2;
    guess.c_dl *= 0.5;
    guess.c_sol *= 2;
    guess.l_stray *= 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_circuit_params(data, guess, {"c_stray"}));
}
BENCHMARK(BM_CircuitFit)->Unit(benchmark::kMillisecond);

void BM_FindPeaks(benchmark::State& state) {
    std::vector<double> axis, values;
    for (double x = 300; x <= 700; x += 0.25) {
        axis.push_back(x);
        values.push_back(std::exp(-0.5 * std::pow((x - 420) / 9, 2)) + 0.6 * std::exp(-0.5 * std::pow((x - 520) / 14, 2)) +
                         0.002 * std::sin(x * 3.1));
    }
    const SampledSpectrum s(axis, values);
    for (auto _ : state) {
        auto peaks = find_peaks(s);
        for (auto& p : peaks) p = fwhm(s, p);
        benchmark::DoNotOptimize(peaks);
    }
}
BENCHMARK(BM_FindPeaks);

}  // namespace

BENCHMARK_MAIN();
