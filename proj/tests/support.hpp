#ifndef QFORCE_TESTS_SUPPORT_HPP
#define QFORCE_TESTS_SUPPORT_HPP

#include "qforce/grids.hpp"
#include "qforce/models.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace qforce::testing {

// Reference configuration: hbar = m = omega_m = 1, gamma = 1e-3,
// S_xi = S_eta = 0.5 (quantum limited), OU prior kappa = 0.2, P = 1,
// n = 2^15, dt = 0.05.
inline OscillatorParams reference_oscillator() { return OscillatorParams{1.0, 1.0, 1e-3, 1.0}; }
inline NoiseModel reference_noise() { return NoiseModel::at_quantum_limit(0.5, 1.0); }
inline PriorModel reference_prior() { return OrnsteinUhlenbeck{0.2, 1.0}; }
inline TimeGrid reference_grid() { return TimeGrid(32768, 0.05); }

inline SensorModel reference_sensor(Topology topology) {
    return SensorModel(reference_oscillator(), reference_noise(), topology);
}

/// Grid of n samples whose bin `k` sits at angular frequency `omega`.
inline TimeGrid grid_with_bin(double omega, long k, std::size_t n) {
    return TimeGrid(n, 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(n) * omega));
}

/// Nearest DFT index to a non-negative angular frequency.
inline std::size_t index_near(const FrequencyGrid& grid, double omega) {
    return static_cast<std::size_t>(std::lround(omega / grid.bin_width()));
}

/// Random even, strictly positive spectrum (log-uniform in [lo, hi]).
inline SampledSpectrum random_even_spectrum(const FrequencyGrid& grid, std::mt19937_64& rng, double lo = 0.1,
                                            double hi = 10.0) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i <= grid.size() / 2; ++i) {
        values[i] = std::exp(u(rng));
        values[grid.mirror(i)] = values[i];
    }
    return SampledSpectrum(grid, std::move(values));
}

inline double relative_difference(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

/// sum |a - b| / sum b over all bins.
inline double integrated_absolute_error(const SampledSpectrum& estimate, const SampledSpectrum& target) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        num += std::abs(estimate[i] - target[i]);
        den += target[i];
    }
    return num / den;
}

}  // namespace qforce::testing

#endif  // QFORCE_TESTS_SUPPORT_HPP
