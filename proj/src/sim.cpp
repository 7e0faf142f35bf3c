#include "qforce/sim.hpp"

#include "qforce/error.hpp"
#include "qforce/fft.hpp"

#include <cmath>

namespace qforce {

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::mt19937_64 make_generator(const SeedSpec& seed, std::string_view label) {
    const std::uint64_t words[3] = {seed.master_seed, seed.trial_index, fnv1a64(label)};
    std::uint32_t halves[6];
    for (int i = 0; i < 3; ++i) {
        halves[2 * i] = static_cast<std::uint32_t>(words[i] & 0xffffffffULL);
        halves[2 * i + 1] = static_cast<std::uint32_t>(words[i] >> 32);
    }
    std::seed_seq seq(std::begin(halves), std::end(halves));
    return std::mt19937_64(seq);
}

std::vector<double> synthesize_stationary(const SampledSpectrum& spectrum, const SeedSpec& seed,
                                          std::string_view label) {
    if (!spectrum.is_even()) {
        throw Error("synthesize_stationary: spectrum of a real process must be even in omega");
    }
    const auto& grid = spectrum.grid();
    const auto n = grid.size();
    const auto half = n / 2;
    const double scale = static_cast<double>(n) / grid.dt();

    auto rng = make_generator(seed, label);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<fft::Complex> coefficients(n);
    coefficients[0] = std::sqrt(scale * spectrum[0]) * normal(rng);
    for (std::size_t i = 1; i < half; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        const double amp = std::sqrt(0.5 * scale * spectrum[i]);
        coefficients[i] = amp * fft::Complex(re, im);
        coefficients[n - i] = std::conj(coefficients[i]);
    }
    coefficients[half] = std::sqrt(scale * spectrum[half]) * normal(rng);
    return fft::inverse_real(coefficients);
}

Trajectory simulate_record(const SensorModel& sensor, const SampledSpectrum& force_spectrum, const SeedSpec& seed) {
    const auto& fgrid = force_spectrum.grid();
    const auto& grid = fgrid.time_grid();
    const auto& noise = sensor.noise();
    const auto g = transfer_function(sensor.oscillator(), fgrid);

    Trajectory t{grid, {}, {}, {}, {}, {}};
    t.x = synthesize_stationary(force_spectrum, seed, stream::force);
    t.xi = synthesize_stationary(SampledSpectrum::constant(fgrid, noise.s_xi), seed, stream::backaction);
    t.eta = synthesize_stationary(SampledSpectrum::constant(fgrid, noise.s_eta), seed, stream::measurement);

    std::vector<double> drive = t.x;
    if (sensor.topology() == Topology::Standard) {
        for (std::size_t j = 0; j < drive.size(); ++j) {
            drive[j] += t.xi[j];
        }
    }
    auto spectrum = fft::forward(drive);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        spectrum[i] *= g[i];
    }
    t.position = fft::inverse_real(spectrum);

    t.y.resize(t.position.size());
    for (std::size_t j = 0; j < t.y.size(); ++j) {
        t.y[j] = t.position[j] + t.eta[j];
    }
    return t;
}

Trajectory simulate_record(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                           const SeedSpec& seed) {
    return simulate_record(sensor, prior_spectrum(prior, FrequencyGrid(grid)), seed);
}

}  // namespace qforce
