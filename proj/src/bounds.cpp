#include "qforce/bounds.hpp"

#include "qforce/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qforce {

SampledSpectrum sql_spectrum(const SensorModel& sensor, const FrequencyGrid& grid) {
    const auto g = transfer_function(sensor.oscillator(), grid);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = sensor.hbar() / std::abs(g[i]);
    }
    return SampledSpectrum(grid, std::move(values));
}

SampledSpectrum spectral_qcrb(const SampledSpectrum& fisher_kernel, const SampledSpectrum& prior, double hbar) {
    if (!(fisher_kernel.grid() == prior.grid())) {
        throw LengthMismatchError("spectral_qcrb: spectra live on different grids");
    }
    const double quarter_h2 = 0.25 * hbar * hbar;
    std::vector<double> values(prior.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double s_dx = prior[i];
        values[i] = s_dx == 0.0 ? 0.0 : quarter_h2 * s_dx / (fisher_kernel[i] * s_dx + quarter_h2);
    }
    return SampledSpectrum(prior.grid(), std::move(values));
}

SampledSpectrum spectral_qcrb(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid) {
    return spectral_qcrb(quantum_fisher_spectrum(sensor, grid), prior_spectrum(prior, grid), sensor.hbar());
}

double point_qcrb(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid) {
    return spectrum_integral(spectral_qcrb(sensor, prior, grid));
}

BoundReport compute_bounds(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid) {
    auto c_min = spectral_qcrb(sensor, prior, grid);
    const double pi_min = spectrum_integral(c_min);
    return BoundReport{std::move(c_min), pi_min, sql_spectrum(sensor, grid)};
}

CirculantMatrix fisher_quantum_matrix(const SensorModel& sensor, const FrequencyGrid& grid) {
    const double dt = grid.dt();
    const double h = sensor.hbar();
    return circulant_covariance(quantum_fisher_spectrum(sensor, grid)).scaled(4.0 * dt * dt / (h * h));
}

CirculantMatrix fisher_classical_matrix(const SampledSpectrum& prior) {
    const auto& grid = prior.grid();
    std::vector<double> eigenvalues(prior.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (!(prior[i] > 0.0)) {
            throw SingularPriorError("fisher_classical_matrix: prior spectrum vanishes at omega = " +
                                     std::to_string(grid.omega(i)) +
                                     "; band-limited priors have no time-domain Fisher matrix");
        }
        eigenvalues[i] = grid.dt() / prior[i];
    }
    return CirculantMatrix::from_eigenvalues(eigenvalues);
}

CirculantMatrix fisher_classical_matrix(const PriorModel& prior, const FrequencyGrid& grid) {
    return fisher_classical_matrix(prior_spectrum(prior, grid));
}

FisherMatrices fisher_matrices(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid) {
    return FisherMatrices{grid.time_grid(), fisher_quantum_matrix(sensor, grid), fisher_classical_matrix(prior, grid)};
}

double matrix_point_bound(const FisherMatrices& fm) {
    return fm.total().inverse_diagonal();
}

double weighted_cost_bound(const FisherMatrices& fm, const SampledSpectrum& weights) {
    const auto total = fm.total();
    if (weights.size() != total.size()) {
        throw LengthMismatchError("weighted_cost_bound: weights do not match the Fisher grid");
    }
    const auto lambda = total.eigenvalues();
    const double largest = *std::max_element(lambda.begin(), lambda.end());
    const double dt = fm.grid.dt();
    double sum = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        if (!(lambda[k] > 1e-13 * largest)) {
            throw SingularFisherError("weighted_cost_bound: total Fisher eigenvalue " + std::to_string(k) +
                                      " is not positive");
        }
        sum += weights[k] * dt / lambda[k];
    }
    return FrequencyGrid(fm.grid).bin_width() / (2.0 * std::numbers::pi) * sum;
}

}  // namespace qforce
