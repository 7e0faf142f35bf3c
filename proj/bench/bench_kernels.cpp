// Serial reference kernels against their FFT / OpenMP counterparts.

#include "qforce/campaign.hpp"
#include "qforce/circulant.hpp"
#include "qforce/models.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace qforce;

SampledSpectrum ou_spectrum(std::size_t n) {
    return prior_spectrum(OrnsteinUhlenbeck{0.2, 1.0}, FrequencyGrid(TimeGrid(n, 0.05)));
}

SensorModel reference_sensor() {
    return SensorModel(OscillatorParams{1.0, 1.0, 1e-3, 1.0}, NoiseModel::at_quantum_limit(0.5, 1.0),
                       Topology::Standard);
}

void BM_CovarianceReference(benchmark::State& state) {
    const auto s = ou_spectrum(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(circulant_covariance_reference(s));
    }
}
BENCHMARK(BM_CovarianceReference)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void BM_CovarianceFft(benchmark::State& state) {
    const auto s = ou_spectrum(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(circulant_covariance(s));
    }
}
BENCHMARK(BM_CovarianceFft)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void BM_DenseEigenvalues(benchmark::State& state) {
    const auto dense = circulant_covariance(ou_spectrum(static_cast<std::size_t>(state.range(0)))).dense();
    for (auto _ : state) {
        benchmark::DoNotOptimize(circulant_eigenvalues(dense));
    }
}
BENCHMARK(BM_DenseEigenvalues)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_CampaignSerial(benchmark::State& state) {
    const CampaignSettings settings{static_cast<std::size_t>(state.range(0)), 1, false};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_campaign_serial(reference_sensor(), OrnsteinUhlenbeck{0.2, 1.0},
                                                     TimeGrid(32768, 0.05), settings));
    }
}
BENCHMARK(BM_CampaignSerial)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CampaignParallel(benchmark::State& state) {
    const CampaignSettings settings{static_cast<std::size_t>(state.range(0)), 1, false};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_campaign(reference_sensor(), OrnsteinUhlenbeck{0.2, 1.0},
                                              TimeGrid(32768, 0.05), settings));
    }
}
BENCHMARK(BM_CampaignParallel)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
