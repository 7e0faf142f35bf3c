#ifndef QFORCE_ESTIMATE_HPP
#define QFORCE_ESTIMATE_HPP

#include "qforce/grids.hpp"
#include "qforce/models.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace qforce {

/// Minimum achievable error spectrum of a noncausal smoother,
/// S_dx S_z / (S_dx + S_z) (zero where either vanishes).
SampledSpectrum smoother_error_spectrum(const SensorModel& sensor, const PriorModel& prior, const FrequencyGrid& grid);
SampledSpectrum smoother_error_spectrum(const SampledSpectrum& prior, const SampledSpectrum& observation_noise);

/// Frequency-domain Wiener smoother for a full periodic record.
///
/// x_hat(w) = S_dx conj(G) y(w) / (S_dx |G|^2 + S_eta + [Standard] S_xi |G|^2),
/// the gain S_dx / (S_dx + S_z) applied to y / G without forming 1/G.
std::vector<double> wiener_smoother(std::span<const double> record, const SensorModel& sensor,
                                    const SampledSpectrum& prior);
std::vector<double> wiener_smoother(std::span<const double> record, const SensorModel& sensor,
                                    const PriorModel& prior, const TimeGrid& grid);

struct EstimationResult {
    std::vector<double> estimate;
    double empirical_mse;
    SampledSpectrum error_spectrum;  ///< periodogram of estimate - truth
};

/// Scores an estimate against the true force over the full record.
EstimationResult score_estimate(std::vector<double> estimate, std::span<const double> truth, const TimeGrid& grid);

/// Mean squared error over the interior, excluding `edge_fraction` of the
/// samples at each end.
double interior_mse(std::span<const double> estimate, std::span<const double> truth, double edge_fraction = 0.1);

/// Exactly discretized linear-Gaussian model with state [q, p, x] (Standard)
/// or [Q, dp, x] (QNC) and an Ornstein-Uhlenbeck force:
///
///   dq = p/m dt,  dp = (-m w_m^2 q - gamma p + x + [Standard] xi) dt,
///   dx = -kappa x dt + sqrt(2 kappa P) dW,  y_j = q_j + eta_j.
///
/// The transition and per-step process noise come from the matrix
/// exponential of the Van Loan block generator; eta has variance S_eta/dt
/// per sample.
struct StateSpaceModel {
    Eigen::Matrix3d transition;
    Eigen::Matrix3d process_noise;
    Eigen::RowVector3d observation;
    double observation_variance;
    Eigen::Matrix3d initial_covariance;  ///< stationary covariance of the state
};

/// Throws UnsupportedPriorError for non-OU priors and Error when gamma == 0.
StateSpaceModel build_state_space(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid);

struct FilterResult {
    std::vector<Eigen::Vector3d> predicted_means;
    std::vector<Eigen::Matrix3d> predicted_covariances;
    std::vector<Eigen::Vector3d> filtered_means;
    std::vector<Eigen::Matrix3d> filtered_covariances;
    std::vector<double> innovation_variance;
    std::vector<double> force_estimate;
    std::vector<double> force_variance;
    double steady_state_force_variance;  ///< filtered force variance at the last step
};

/// Causal Kalman filter over the whole record (Joseph-form update). Throws
/// NumericalError naming the step if a covariance loses positive
/// semidefiniteness.
FilterResult kalman_filter(std::span<const double> record, const StateSpaceModel& model);

struct SmootherResult {
    std::vector<Eigen::Vector3d> means;
    std::vector<Eigen::Matrix3d> covariances;
    std::vector<double> force_estimate;
    std::vector<double> force_variance;
    double interior_force_variance;  ///< mean over the middle 80% of the record
};

/// Rauch-Tung-Striebel fixed-interval smoother on a completed filter pass.
SmootherResult rts_smoother(const FilterResult& filter, const StateSpaceModel& model);

}  // namespace qforce

#endif  // QFORCE_ESTIMATE_HPP
