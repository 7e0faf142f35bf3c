#include "qforce/models.hpp"

#include "qforce/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qforce {
namespace {

constexpr double kQuantumLimitTolerance = 1e-12;
constexpr double kResonanceTolerance = 1e-12;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void validate(const OscillatorParams& osc) {
    if (!positive_finite(osc.mass)) throw Error("oscillator: mass must be > 0");
    if (!positive_finite(osc.omega_m)) throw Error("oscillator: omega_m must be > 0");
    if (!(osc.gamma >= 0.0) || !std::isfinite(osc.gamma)) throw Error("oscillator: gamma must be >= 0");
    if (!positive_finite(osc.hbar)) throw Error("oscillator: hbar must be > 0");
}

bool on_resonance(const OscillatorParams& osc, double omega) {
    const double w2 = osc.omega_m * osc.omega_m;
    return osc.gamma == 0.0 && std::abs(omega * omega - w2) <= kResonanceTolerance * w2;
}

template <typename F>
SampledSpectrum map_power(const ComplexResponse& g, F&& f) {
    std::vector<double> values(g.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f(std::norm(g[i]));
    }
    return SampledSpectrum(g.grid(), std::move(values));
}

}  // namespace

NoiseModel NoiseModel::at_quantum_limit(double s_xi, double hbar) {
    return NoiseModel{s_xi, hbar * hbar / (4.0 * s_xi), true};
}

const char* to_string(Topology topology) noexcept {
    return topology == Topology::Standard ? "standard" : "qnc";
}

SensorModel::SensorModel(OscillatorParams oscillator, NoiseModel noise, Topology topology)
    : osc_(oscillator), noise_(noise), topology_(topology) {
    validate(osc_);
    if (!positive_finite(noise_.s_xi)) throw Error("noise: s_xi must be > 0");
    if (!positive_finite(noise_.s_eta)) throw Error("noise: s_eta must be > 0");
    const double limit = 0.25 * osc_.hbar * osc_.hbar;
    const double product = noise_.s_xi * noise_.s_eta;
    const bool at_limit = std::abs(product - limit) <= kQuantumLimitTolerance * limit;
    if (product < limit && !at_limit) {
        std::ostringstream msg;
        msg << "noise: s_xi * s_eta = " << product << " violates the uncertainty bound hbar^2/4 = " << limit;
        throw Error(msg.str());
    }
    if (noise_.quantum_limited != at_limit) {
        throw Error(noise_.quantum_limited ? "noise: quantum_limited requires s_xi * s_eta == hbar^2/4"
                                           : "noise: s_xi * s_eta == hbar^2/4 but quantum_limited is false");
    }
    if (topology_ == Topology::Standard && !(osc_.gamma > 0.0)) {
        throw Error("sensor: standard topology requires gamma > 0");
    }
}

void validate(const PriorModel& prior) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                if (!positive_finite(p.kappa)) throw Error("prior: kappa must be > 0");
                if (!positive_finite(p.p_var)) throw Error("prior: p_var must be > 0");
            } else {
                if (!positive_finite(p.s0)) throw Error("prior: s0 must be > 0");
                if (!positive_finite(p.omega_c)) throw Error("prior: omega_c must be > 0");
            }
        },
        prior);
}

double prior_density(const PriorModel& prior, double omega) {
    return std::visit(
        [omega](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return 2.0 * p.kappa * p.p_var / (p.kappa * p.kappa + omega * omega);
            } else {
                return std::abs(omega) <= p.omega_c ? p.s0 : 0.0;
            }
        },
        prior);
}

double prior_variance(const PriorModel& prior) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return p.p_var;
            } else {
                return p.s0 * p.omega_c / std::numbers::pi;
            }
        },
        prior);
}

std::complex<double> transfer_at(const OscillatorParams& osc, double omega) {
    if (on_resonance(osc, omega)) {
        throw ResonanceError("transfer function is singular at omega = " + std::to_string(omega) +
                             " (gamma = 0 on resonance)");
    }
    const std::complex<double> denom(osc.omega_m * osc.omega_m - omega * omega, -osc.gamma * omega);
    return 1.0 / (osc.mass * denom);
}

ComplexResponse transfer_function(const OscillatorParams& osc, const FrequencyGrid& grid) {
    validate(osc);
    std::vector<std::complex<double>> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = transfer_at(osc, grid.omega(i));
    }
    const auto nyquist = grid.nyquist_index();
    values[nyquist] = values[nyquist].real();
    return ComplexResponse(grid, std::move(values));
}

SampledSpectrum prior_spectrum(const PriorModel& prior, const FrequencyGrid& grid) {
    validate(prior);
    return SampledSpectrum::from_function(grid, [&prior](double w) { return prior_density(prior, w); });
}

SampledSpectrum observation_noise_spectrum(const SensorModel& sensor, const FrequencyGrid& grid) {
    const auto g = transfer_function(sensor.oscillator(), grid);
    const double s_eta = sensor.noise().s_eta;
    const double s_xi = sensor.topology() == Topology::Standard ? sensor.noise().s_xi : 0.0;
    return map_power(g, [=](double g2) { return s_eta / g2 + s_xi; });
}

SampledSpectrum backaction_position_spectrum(const SensorModel& sensor, const FrequencyGrid& grid) {
    if (sensor.topology() == Topology::Qnc) {
        // still validates the grid against the resonance precondition
        (void)transfer_function(sensor.oscillator(), grid);
        return SampledSpectrum::zero(grid);
    }
    return quantum_fisher_spectrum(sensor, grid);
}

SampledSpectrum quantum_fisher_spectrum(const SensorModel& sensor, const FrequencyGrid& grid) {
    const auto g = transfer_function(sensor.oscillator(), grid);
    const double s_xi = sensor.noise().s_xi;
    return map_power(g, [=](double g2) { return g2 * s_xi; });
}

std::vector<std::string> stationarity_warnings(const SensorModel& sensor, const PriorModel& prior,
                                               const TimeGrid& grid) {
    std::vector<std::string> out;
    const double duration = grid.duration();
    if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&prior); ou && duration < 50.0 / ou->kappa) {
        std::ostringstream msg;
        msg << "record duration T = " << duration << " is shorter than 50/kappa = " << 50.0 / ou->kappa;
        out.push_back(msg.str());
    }
    const double gamma = sensor.oscillator().gamma;
    if (gamma > 0.0 && duration < 50.0 / gamma) {
        std::ostringstream msg;
        msg << "record duration T = " << duration << " is shorter than 50/gamma = " << 50.0 / gamma;
        out.push_back(msg.str());
    }
    return out;
}

}  // namespace qforce
