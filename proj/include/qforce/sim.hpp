#ifndef QFORCE_SIM_HPP
#define QFORCE_SIM_HPP

#include "qforce/grids.hpp"
#include "qforce/models.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qforce {

/// Identifies one Monte Carlo realization.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

namespace stream {
inline constexpr std::string_view force = "force";
inline constexpr std::string_view backaction = "backaction";
inline constexpr std::string_view measurement = "measurement";
}  // namespace stream

/// Substream generator for (master_seed, trial_index, label).
///
/// Splitting rule: the label is hashed with 64-bit FNV-1a and the three
/// 64-bit words (master, trial, hash), each split into low/high 32-bit
/// halves in that order, seed a std::seed_seq that initializes mt19937_64.
std::mt19937_64 make_generator(const SeedSpec& seed, std::string_view label);

std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Real Gaussian record whose exact covariance is circulant_covariance(spectrum).
///
/// Draws Hermitian DFT coefficients with E|X_k|^2 = n S_k / dt (DC and Nyquist
/// real, bins 1..n/2 drawn in order) and inverse-transforms them. The
/// spectrum must be even.
std::vector<double> synthesize_stationary(const SampledSpectrum& spectrum, const SeedSpec& seed,
                                          std::string_view label);

/// One realization of the force, probe noises, position and record.
struct Trajectory {
    TimeGrid grid;
    std::vector<double> x;         ///< force
    std::vector<double> xi;        ///< backaction force noise
    std::vector<double> eta;       ///< measurement noise
    std::vector<double> position;  ///< q (Standard) or Q (QNC)
    std::vector<double> y;         ///< record, position + eta
};

/// Periodic-stationary simulation. The response is applied per bin,
/// position(w) = G(w) [x(w) + xi(w)] for Standard and G(w) x(w) for QNC.
Trajectory simulate_record(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                           const SeedSpec& seed);

/// Same, with the force spectrum given directly (may vanish, e.g. a zero force).
Trajectory simulate_record(const SensorModel& sensor, const SampledSpectrum& force_spectrum, const SeedSpec& seed);

}  // namespace qforce

#endif  // QFORCE_SIM_HPP
