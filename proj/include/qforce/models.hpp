#ifndef QFORCE_MODELS_HPP
#define QFORCE_MODELS_HPP

#include "qforce/grids.hpp"

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace qforce {

/// Mechanical oscillator; gamma is a small velocity damping rate used to
/// regularize the resonance.
struct OscillatorParams {
    double mass = 1.0;
    double omega_m = 1.0;
    double gamma = 1e-3;
    double hbar = 1.0;
};

/// Flat probe noise spectra: backaction force xi and measurement noise eta.
/// Uncorrelated with each other. Physical noise obeys s_xi * s_eta >= hbar^2 / 4,
/// with equality iff quantum_limited.
struct NoiseModel {
    double s_xi = 0.5;
    double s_eta = 0.5;
    bool quantum_limited = true;

    /// Noise at the uncertainty limit: s_eta = hbar^2 / (4 s_xi).
    static NoiseModel at_quantum_limit(double s_xi, double hbar);
};

enum class Topology {
    Standard,  ///< y = q + eta, backaction drives the monitored oscillator
    Qnc,       ///< y = Q + eta with Q = q + q', backaction cancelled in Q
};

const char* to_string(Topology topology) noexcept;

class SensorModel {
public:
    /// Validates all invariants; throws qforce::Error on violation.
    SensorModel(OscillatorParams oscillator, NoiseModel noise, Topology topology);

    const OscillatorParams& oscillator() const noexcept { return osc_; }
    const NoiseModel& noise() const noexcept { return noise_; }
    Topology topology() const noexcept { return topology_; }
    double hbar() const noexcept { return osc_.hbar; }

private:
    OscillatorParams osc_;
    NoiseModel noise_;
    Topology topology_;
};

struct OrnsteinUhlenbeck {
    double kappa = 0.2;
    double p_var = 1.0;
};

struct BandLimitedFlat {
    double s0 = 1.0;
    double omega_c = 1.0;
};

/// Stationary Gaussian prior of the force waveform.
using PriorModel = std::variant<OrnsteinUhlenbeck, BandLimitedFlat>;

void validate(const PriorModel& prior);

/// Prior spectral density at angular frequency omega.
double prior_density(const PriorModel& prior, double omega);

/// Closed-form stationary variance of the continuous prior (integral over all omega).
double prior_variance(const PriorModel& prior);

/// 1 / [m (w_m^2 - w^2 - i gamma w)]. Throws ResonanceError at an undamped resonance.
std::complex<double> transfer_at(const OscillatorParams& osc, double omega);

/// Oscillator transfer function on every bin. The Nyquist bin holds the real
/// part so the response stays Hermitian. Throws ResonanceError when gamma == 0
/// and a bin lies on +-omega_m (relative tolerance 1e-12).
ComplexResponse transfer_function(const OscillatorParams& osc, const FrequencyGrid& grid);

SampledSpectrum prior_spectrum(const PriorModel& prior, const FrequencyGrid& grid);

/// Force-referred observation noise S_z: S_eta/|G|^2 + S_xi (Standard) or
/// S_eta/|G|^2 (QNC).
SampledSpectrum observation_noise_spectrum(const SensorModel& sensor, const FrequencyGrid& grid);

/// Backaction-driven fluctuation spectrum of the monitored coordinate:
/// |G|^2 S_xi for Standard, identically zero for QNC.
SampledSpectrum backaction_position_spectrum(const SensorModel& sensor, const FrequencyGrid& grid);

/// Spectrum of Delta q for the oscillator the force couples to, |G|^2 S_xi.
/// This is the kernel of the quantum Fisher information and does not depend
/// on the topology: the auxiliary oscillator removes xi from the record, not
/// from q.
SampledSpectrum quantum_fisher_spectrum(const SensorModel& sensor, const FrequencyGrid& grid);

/// Diagnostics when the record is not long compared to the correlation
/// times (T >= 50/kappa and T >= 50/gamma).
std::vector<std::string> stationarity_warnings(const SensorModel& sensor, const PriorModel& prior,
                                               const TimeGrid& grid);

}  // namespace qforce

#endif  // QFORCE_MODELS_HPP
