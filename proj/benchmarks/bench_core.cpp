// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "aqd/detection.hpp"
#include "aqd/dft.hpp"
#include "aqd/estimation.hpp"
#include "aqd/rng.hpp"
#include "aqd/special.hpp"

namespace {

void BM_QFunction(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqd::q_function(x));
        x = x < 8.0 ? x + 1e-3 : -8.0;
    }
}
BENCHMARK(BM_QFunction);

void BM_CircularGaussian(benchmark::State& state) {
    aqd::Sampler rng(aqd::RngStream{1, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.next_circular_gaussian(1.0));
    }
}
BENCHMARK(BM_CircularGaussian);

void BM_UnitaryDft(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    aqd::Sampler rng(aqd::RngStream{2, 0});
    std::vector<aqd::Complex> v(n);
    for (auto& z : v) {
        z = rng.next_circular_gaussian(1.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqd::unitary_dft(v));
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_UnitaryDft)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_PilotErrorProbability(benchmark::State& state) {
    const int l = static_cast<int>(state.range(0));
    double snr = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqd::estimation::pilot_error_probability(l, snr));
        snr = snr < 100.0 ? snr * 1.001 : 1.0;
    }
}
BENCHMARK(BM_PilotErrorProbability)->Arg(1)->Arg(8)->Arg(64);

void BM_PilotDetectionTrial(benchmark::State& state) {
    // One full Monte Carlo trial of the pilot detection experiment at l = 4.
    const int l = 4;
    const double amplitude = 2.0;
    std::uint64_t t = 0;
    for (auto _ : state) {
        aqd::Sampler rng(aqd::RngStream{3, t++});
        const double s = rng.next_bool() ? 1.0 : -1.0;
        aqd::Complex stat(0.0, 0.0);
        for (int i = 0; i < l; ++i) {
            const aqd::Complex gain = rng.next_circular_gaussian(1.0);
            const aqd::Complex received =
                gain * aqd::Complex(s * amplitude, 0.0) + rng.next_circular_gaussian(1.0);
            stat += std::conj(gain) * received;
        }
        benchmark::DoNotOptimize(stat.real() >= 0.0);
    }
}
BENCHMARK(BM_PilotDetectionTrial);

void BM_MlDecide(benchmark::State& state) {
    const std::size_t d = 4;
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    aqd::Sampler rng(aqd::RngStream{4, 0});
    const auto book = aqd::detection::sample_codebook(n, d, 1.0, rng);
    std::vector<aqd::Complex> g(d);
    for (auto& gj : g) {
        gj = rng.next_circular_gaussian(1.0);
    }
    const aqd::detection::GainVector gains(std::move(g));
    std::vector<aqd::Complex> observed(d);
    for (auto& z : observed) {
        z = rng.next_circular_gaussian(2.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqd::detection::ml_decide(observed, gains, book));
    }
}
BENCHMARK(BM_MlDecide)->Arg(2)->Arg(8)->Arg(32);

} // namespace

BENCHMARK_MAIN();
