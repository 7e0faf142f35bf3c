#include "qforce/estimate.hpp"

#include "qforce/error.hpp"
#include "qforce/fft.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>
#include <string>

namespace qforce {
namespace {

constexpr double kEdgeFraction = 0.1;

void require_psd(const Eigen::Matrix3d& p, std::size_t step, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
    solver.computeDirect(p, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d ev = solver.eigenvalues();
    if (ev.minCoeff() < -1e-10 * std::max(ev.maxCoeff(), 1e-300) || !p.allFinite()) {
        std::ostringstream msg;
        msg << "kalman: " << what << " covariance is not positive semidefinite at step " << step
            << " (eigenvalues " << ev.transpose() << ")";
        throw NumericalError(msg.str());
    }
}

std::pair<std::size_t, std::size_t> interior_range(std::size_t n, double edge_fraction) {
    const auto edge = static_cast<std::size_t>(std::floor(edge_fraction * static_cast<double>(n)));
    return {edge, n - edge};
}

}  // namespace

SampledSpectrum smoother_error_spectrum(const SampledSpectrum& prior, const SampledSpectrum& observation_noise) {
    if (!(prior.grid() == observation_noise.grid())) {
        throw LengthMismatchError("smoother_error_spectrum: spectra live on different grids");
    }
    std::vector<double> values(prior.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double s_dx = prior[i];
        const double s_z = observation_noise[i];
        values[i] = (s_dx == 0.0 || s_z == 0.0) ? 0.0 : s_dx * s_z / (s_dx + s_z);
    }
    return SampledSpectrum(prior.grid(), std::move(values));
}

SampledSpectrum smoother_error_spectrum(const SensorModel& sensor, const PriorModel& prior,
                                        const FrequencyGrid& grid) {
    return smoother_error_spectrum(prior_spectrum(prior, grid), observation_noise_spectrum(sensor, grid));
}

std::vector<double> wiener_smoother(std::span<const double> record, const SensorModel& sensor,
                                    const SampledSpectrum& prior) {
    const auto& grid = prior.grid();
    if (record.size() != grid.size()) {
        throw LengthMismatchError("wiener_smoother: record length " + std::to_string(record.size()) +
                                  " does not match grid size " + std::to_string(grid.size()));
    }
    const auto g = transfer_function(sensor.oscillator(), grid);
    const double s_eta = sensor.noise().s_eta;
    const double s_xi = sensor.topology() == Topology::Standard ? sensor.noise().s_xi : 0.0;

    auto spectrum = fft::forward(record);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double s_dx = prior[i];
        if (s_dx == 0.0) {
            spectrum[i] = 0.0;
            continue;
        }
        const double g2 = std::norm(g[i]);
        spectrum[i] *= s_dx * std::conj(g[i]) / (s_dx * g2 + s_eta + s_xi * g2);
    }
    return fft::inverse_real(spectrum);
}

std::vector<double> wiener_smoother(std::span<const double> record, const SensorModel& sensor,
                                    const PriorModel& prior, const TimeGrid& grid) {
    return wiener_smoother(record, sensor, prior_spectrum(prior, FrequencyGrid(grid)));
}

EstimationResult score_estimate(std::vector<double> estimate, std::span<const double> truth, const TimeGrid& grid) {
    if (estimate.size() != truth.size() || estimate.size() != grid.size()) {
        throw LengthMismatchError("score_estimate: estimate, truth and grid sizes differ");
    }
    std::vector<double> error(estimate.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < error.size(); ++j) {
        error[j] = estimate[j] - truth[j];
        sum += error[j] * error[j];
    }
    const double mse = sum / static_cast<double>(error.size());
    auto spectrum = periodogram(error, grid);
    return EstimationResult{std::move(estimate), mse, std::move(spectrum)};
}

double interior_mse(std::span<const double> estimate, std::span<const double> truth, double edge_fraction) {
    if (estimate.size() != truth.size()) {
        throw LengthMismatchError("interior_mse: estimate and truth sizes differ");
    }
    const auto [begin, end] = interior_range(estimate.size(), edge_fraction);
    double sum = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
        const double e = estimate[j] - truth[j];
        sum += e * e;
    }
    return sum / static_cast<double>(end - begin);
}

StateSpaceModel build_state_space(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid) {
    const auto* ou = std::get_if<OrnsteinUhlenbeck>(&prior);
    if (ou == nullptr) {
        throw UnsupportedPriorError("kalman: the state-space model needs an Ornstein-Uhlenbeck prior");
    }
    validate(prior);
    const auto& osc = sensor.oscillator();
    if (!(osc.gamma > 0.0)) {
        throw Error("kalman: gamma must be > 0 for a stationary initial state");
    }
    const double dt = grid.dt();

    Eigen::Matrix3d a;
    a << 0.0, 1.0 / osc.mass, 0.0,
         -osc.mass * osc.omega_m * osc.omega_m, -osc.gamma, 1.0,
         0.0, 0.0, -ou->kappa;
    Eigen::Matrix3d qc = Eigen::Matrix3d::Zero();
    qc(1, 1) = sensor.topology() == Topology::Standard ? sensor.noise().s_xi : 0.0;
    qc(2, 2) = 2.0 * ou->kappa * ou->p_var;

    // Van Loan: exp([[-A, Qc], [0, A^T]] dt) = [[., F^{-1} Qd], [0, F^T]]
    Eigen::Matrix<double, 6, 6> block = Eigen::Matrix<double, 6, 6>::Zero();
    block.topLeftCorner<3, 3>() = -a * dt;
    block.topRightCorner<3, 3>() = qc * dt;
    block.bottomRightCorner<3, 3>() = a.transpose() * dt;
    const Eigen::Matrix<double, 6, 6> e = block.exp();

    StateSpaceModel model;
    model.transition = e.bottomRightCorner<3, 3>().transpose();
    const Eigen::Matrix3d qd = model.transition * e.topRightCorner<3, 3>();
    model.process_noise = 0.5 * (qd + qd.transpose());
    model.observation << 1.0, 0.0, 0.0;
    model.observation_variance = sensor.noise().s_eta / dt;

    // stationary covariance: vec(S) = (I - F kron F)^{-1} vec(Qd)
    const Eigen::Matrix<double, 9, 9> lhs =
        Eigen::Matrix<double, 9, 9>::Identity() - Eigen::kroneckerProduct(model.transition, model.transition).eval();
    const Eigen::Matrix<double, 9, 1> rhs = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(model.process_noise.data());
    const Eigen::Matrix<double, 9, 1> vec = lhs.fullPivLu().solve(rhs);
    const Eigen::Matrix3d stationary = Eigen::Map<const Eigen::Matrix3d>(vec.data());
    model.initial_covariance = 0.5 * (stationary + stationary.transpose());
    return model;
}

FilterResult kalman_filter(std::span<const double> record, const StateSpaceModel& model) {
    const auto n = record.size();
    if (n == 0) {
        throw LengthMismatchError("kalman: empty record");
    }
    FilterResult out;
    out.predicted_means.resize(n);
    out.predicted_covariances.resize(n);
    out.filtered_means.resize(n);
    out.filtered_covariances.resize(n);
    out.innovation_variance.resize(n);
    out.force_estimate.resize(n);
    out.force_variance.resize(n);

    const auto& f = model.transition;
    const auto& h = model.observation;
    const double r = model.observation_variance;
    const Eigen::Matrix3d identity = Eigen::Matrix3d::Identity();

    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    Eigen::Matrix3d cov = model.initial_covariance;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
            mean = f * mean;
            cov = f * cov * f.transpose() + model.process_noise;
            cov = 0.5 * (cov + cov.transpose()).eval();
        }
        out.predicted_means[j] = mean;
        out.predicted_covariances[j] = cov;
        require_psd(cov, j, "predicted");

        const double s = (h * cov * h.transpose())(0, 0) + r;
        if (!(s > 0.0)) {
            throw NumericalError("kalman: innovation variance is not positive at step " + std::to_string(j));
        }
        const Eigen::Vector3d gain = cov * h.transpose() / s;
        mean += gain * (record[j] - (h * mean)(0, 0));
        const Eigen::Matrix3d ikh = identity - gain * h;
        cov = ikh * cov * ikh.transpose() + gain * r * gain.transpose();
        cov = 0.5 * (cov + cov.transpose()).eval();
        require_psd(cov, j, "filtered");

        out.innovation_variance[j] = s;
        out.filtered_means[j] = mean;
        out.filtered_covariances[j] = cov;
        out.force_estimate[j] = mean(2);
        out.force_variance[j] = cov(2, 2);
    }
    out.steady_state_force_variance = out.force_variance.back();
    return out;
}

SmootherResult rts_smoother(const FilterResult& filter, const StateSpaceModel& model) {
    const auto n = filter.filtered_means.size();
    if (n == 0) {
        throw LengthMismatchError("rts_smoother: empty filter result");
    }
    SmootherResult out;
    out.means.resize(n);
    out.covariances.resize(n);
    out.force_estimate.resize(n);
    out.force_variance.resize(n);

    out.means[n - 1] = filter.filtered_means[n - 1];
    out.covariances[n - 1] = filter.filtered_covariances[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) {
        const auto& pf = filter.filtered_covariances[j];
        const auto& pp = filter.predicted_covariances[j + 1];
        // C = Pf F^T Pp^{-1}, computed as (Pp^{-1} F Pf)^T
        const Eigen::Matrix3d c = pp.ldlt().solve(model.transition * pf).transpose();
        out.means[j] = filter.filtered_means[j] + c * (out.means[j + 1] - filter.predicted_means[j + 1]);
        Eigen::Matrix3d cov = pf + c * (out.covariances[j + 1] - pp) * c.transpose();
        out.covariances[j] = 0.5 * (cov + cov.transpose());
        require_psd(out.covariances[j], j, "smoothed");
    }
    for (std::size_t j = 0; j < n; ++j) {
        out.force_estimate[j] = out.means[j](2);
        out.force_variance[j] = out.covariances[j](2, 2);
    }
    const auto [begin, end] = interior_range(n, kEdgeFraction);
    double sum = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
        sum += out.force_variance[j];
    }
    out.interior_force_variance = sum / static_cast<double>(end - begin);
    return out;
}

}  // namespace qforce
