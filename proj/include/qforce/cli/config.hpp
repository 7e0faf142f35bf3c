#ifndef QFORCE_CLI_CONFIG_HPP
#define QFORCE_CLI_CONFIG_HPP

#include "qforce/grids.hpp"
#include "qforce/models.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qforce::cli {

inline constexpr double kHbarSi = 1.054571817e-34;

/// Validated experiment configuration.
///
/// JSON schema (flat object, nested only for prior and grid):
///   units            "natural" (default, hbar = 1) | "si"
///   m, omega_m       > 0
///   gamma            >= 0, default 1e-3 * omega_m
///   hbar             > 0, default by units
///   s_xi             > 0
///   s_eta            > 0; optional when quantum_limited (then hbar^2 / (4 s_xi))
///   quantum_limited  bool, default false
///   topology         "standard" | "qnc"
///   prior            {"type": "ou", "kappa", "p_var"} | {"type": "band_limited", "s0", "omega_c"}
///   grid             {"n": even >= 2, "dt": > 0}
///   trials           >= 1, default 200
///   seed             unsigned 64-bit, default 0
///   kalman           bool, default false (montecarlo also runs the RTS smoother)
/// Unknown keys are rejected.
struct ExperimentConfig {
    std::string units = "natural";
    OscillatorParams oscillator;
    NoiseModel noise;
    Topology topology = Topology::Standard;
    PriorModel prior;
    std::size_t n = 32768;
    double dt = 0.05;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    bool kalman = false;

    SensorModel sensor() const { return SensorModel(oscillator, noise, topology); }
    TimeGrid time_grid() const { return TimeGrid(n, dt); }
    FrequencyGrid frequency_grid() const { return FrequencyGrid(time_grid()); }
};

/// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& document);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical (sorted-key) JSON of the effective configuration.
nlohmann::json to_json(const ExperimentConfig& config);

/// "fnv1a64:<16 hex digits>" of the canonical JSON dump.
std::string config_hash(const ExperimentConfig& config);

std::vector<std::string> config_warnings(const ExperimentConfig& config);

}  // namespace qforce::cli

#endif  // QFORCE_CLI_CONFIG_HPP
