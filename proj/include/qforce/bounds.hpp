#ifndef QFORCE_BOUNDS_HPP
#define QFORCE_BOUNDS_HPP

#include "qforce/circulant.hpp"
#include "qforce/grids.hpp"
#include "qforce/models.hpp"

namespace qforce {

/// Standard quantum limit hbar / |G(w)|.
SampledSpectrum sql_spectrum(const SensorModel& sensor, const FrequencyGrid& grid);

/// Lower bound on the estimation-error spectrum, the equality case of
///
///   C(w) (|G|^2 S_xi + hbar^2 / (4 S_dx)) >= hbar^2 / 4,
///
/// evaluated as (hbar^2/4) S_dx / (S_dq S_dx + hbar^2/4) so that bins with
/// S_dx = 0 give exactly 0.
SampledSpectrum spectral_qcrb(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid);

/// Same bound from precomputed spectra; the building block of spectral_qcrb.
SampledSpectrum spectral_qcrb(const SampledSpectrum& fisher_kernel, const SampledSpectrum& prior, double hbar);

/// Point-error bound: spectrum_integral(spectral_qcrb(...)).
double point_qcrb(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid);

struct BoundReport {
    SampledSpectrum c_min;
    double pi_min;
    SampledSpectrum s_sql;
};

BoundReport compute_bounds(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid);

/// Quantum Fisher matrix (4 dt^2 / hbar^2) <Delta q_j Delta q_l>_sym of the
/// stationary backaction fluctuations of q.
CirculantMatrix fisher_quantum_matrix(const SensorModel& sensor, const FrequencyGrid& grid);

/// Prior Fisher matrix: inverse of the prior covariance, built from the
/// reciprocal circulant eigenvalues dt / S_k. Throws SingularPriorError if any
/// bin has zero prior spectrum.
CirculantMatrix fisher_classical_matrix(const PriorModel& prior, const FrequencyGrid& grid);
CirculantMatrix fisher_classical_matrix(const SampledSpectrum& prior);

struct FisherMatrices {
    TimeGrid grid;
    CirculantMatrix f_quantum;
    CirculantMatrix f_classical;

    CirculantMatrix total() const { return f_quantum + f_classical; }
};

FisherMatrices fisher_matrices(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid);

/// F^{-1}(t, t): the diagonal of the inverse total Fisher matrix.
double matrix_point_bound(const FisherMatrices& fm);

/// Bound on a stationary quadratic cost with frequency weights w_k:
/// dw/(2 pi) sum_k w_k dt / lambda_k, lambda_k the total Fisher eigenvalues.
/// Unit weights reproduce matrix_point_bound.
double weighted_cost_bound(const FisherMatrices& fm, const SampledSpectrum& weights);

}  // namespace qforce

#endif  // QFORCE_BOUNDS_HPP
