#include "qforce/cli/config.hpp"

#include "qforce/error.hpp"
#include "qforce/sim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace qforce::cli {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(path, "missing required key");
    }
    return *it;
}

double number(const json& value, const std::string& path) {
    if (!value.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double v = value.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(path, "must be finite");
    }
    return v;
}

double positive(const json& value, const std::string& path) {
    const double v = number(value, path);
    if (!(v > 0.0)) {
        throw ConfigError(path, "must be > 0");
    }
    return v;
}

std::uint64_t unsigned_integer(const json& value, const std::string& path) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

bool boolean(const json& value, const std::string& path) {
    if (!value.is_boolean()) {
        throw ConfigError(path, "expected true or false");
    }
    return value.get<bool>();
}

std::string string(const json& value, const std::string& path) {
    if (!value.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return value.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(prefix + key, "unknown key");
        }
    }
}

PriorModel parse_prior(const json& obj) {
    if (!obj.is_object()) {
        throw ConfigError("prior", "expected an object");
    }
    const auto type = string(require(obj, "type", "prior.type"), "prior.type");
    if (type == "ou") {
        reject_unknown(obj, {"type", "kappa", "p_var"}, "prior.");
        return OrnsteinUhlenbeck{positive(require(obj, "kappa", "prior.kappa"), "prior.kappa"),
                                 positive(require(obj, "p_var", "prior.p_var"), "prior.p_var")};
    }
    if (type == "band_limited") {
        reject_unknown(obj, {"type", "s0", "omega_c"}, "prior.");
        return BandLimitedFlat{positive(require(obj, "s0", "prior.s0"), "prior.s0"),
                               positive(require(obj, "omega_c", "prior.omega_c"), "prior.omega_c")};
    }
    throw ConfigError("prior.type", "expected \"ou\" or \"band_limited\", got \"" + type + "\"");
}

}  // namespace

ExperimentConfig parse_config(const json& document) {
    if (!document.is_object()) {
        throw ConfigError("<root>", "expected a JSON object");
    }
    reject_unknown(document,
                   {"units", "m", "omega_m", "gamma", "hbar", "s_xi", "s_eta", "quantum_limited", "topology", "prior",
                    "grid", "trials", "seed", "kalman"},
                   "");

    ExperimentConfig c;
    if (document.contains("units")) {
        c.units = string(document["units"], "units");
        if (c.units != "natural" && c.units != "si") {
            throw ConfigError("units", "expected \"natural\" or \"si\"");
        }
    }
    c.oscillator.mass = positive(require(document, "m", "m"), "m");
    c.oscillator.omega_m = positive(require(document, "omega_m", "omega_m"), "omega_m");
    c.oscillator.gamma = 1e-3 * c.oscillator.omega_m;
    if (document.contains("gamma")) {
        c.oscillator.gamma = number(document["gamma"], "gamma");
        if (c.oscillator.gamma < 0.0) {
            throw ConfigError("gamma", "must be >= 0");
        }
    }
    c.oscillator.hbar = c.units == "si" ? kHbarSi : 1.0;
    if (document.contains("hbar")) {
        c.oscillator.hbar = positive(document["hbar"], "hbar");
    }

    c.noise.quantum_limited = document.contains("quantum_limited") &&
                              boolean(document["quantum_limited"], "quantum_limited");
    c.noise.s_xi = positive(require(document, "s_xi", "s_xi"), "s_xi");
    if (document.contains("s_eta")) {
        c.noise.s_eta = positive(document["s_eta"], "s_eta");
    } else if (c.noise.quantum_limited) {
        c.noise.s_eta = NoiseModel::at_quantum_limit(c.noise.s_xi, c.oscillator.hbar).s_eta;
    } else {
        throw ConfigError("s_eta", "missing required key (optional only when quantum_limited is true)");
    }

    const auto topology = string(require(document, "topology", "topology"), "topology");
    if (topology == "standard") {
        c.topology = Topology::Standard;
    } else if (topology == "qnc") {
        c.topology = Topology::Qnc;
    } else {
        throw ConfigError("topology", "expected \"standard\" or \"qnc\", got \"" + topology + "\"");
    }

    c.prior = parse_prior(require(document, "prior", "prior"));

    const auto& grid = require(document, "grid", "grid");
    if (!grid.is_object()) {
        throw ConfigError("grid", "expected an object");
    }
    reject_unknown(grid, {"n", "dt"}, "grid.");
    const auto n = unsigned_integer(require(grid, "n", "grid.n"), "grid.n");
    if (n < 2 || n % 2 != 0) {
        throw ConfigError("grid.n", "must be even and >= 2");
    }
    c.n = static_cast<std::size_t>(n);
    c.dt = positive(require(grid, "dt", "grid.dt"), "grid.dt");

    if (document.contains("trials")) {
        c.trials = static_cast<std::size_t>(unsigned_integer(document["trials"], "trials"));
        if (c.trials < 1) {
            throw ConfigError("trials", "must be >= 1");
        }
    }
    if (document.contains("seed")) {
        c.seed = unsigned_integer(document["seed"], "seed");
    }
    if (document.contains("kalman")) {
        c.kalman = boolean(document["kalman"], "kalman");
    }

    // cross-field invariants (uncertainty relation, damping per topology)
    try {
        const auto sensor = c.sensor();
        (void)transfer_function(sensor.oscillator(), c.frequency_grid());
    } catch (const ResonanceError& e) {
        throw ConfigError("gamma", e.what());
    } catch (const Error& e) {
        const std::string what = e.what();
        std::string key = "s_eta";
        if (what.find("quantum_limited") != std::string::npos) key = "quantum_limited";
        if (what.find("gamma") != std::string::npos) key = "gamma";
        throw ConfigError(key, what);
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open " + path.string());
    }
    json document;
    try {
        document = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(document);
}

json to_json(const ExperimentConfig& c) {
    json prior = std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return {{"type", "ou"}, {"kappa", p.kappa}, {"p_var", p.p_var}};
            } else {
                return {{"type", "band_limited"}, {"s0", p.s0}, {"omega_c", p.omega_c}};
            }
        },
        c.prior);
    return json{{"units", c.units},
                {"m", c.oscillator.mass},
                {"omega_m", c.oscillator.omega_m},
                {"gamma", c.oscillator.gamma},
                {"hbar", c.oscillator.hbar},
                {"s_xi", c.noise.s_xi},
                {"s_eta", c.noise.s_eta},
                {"quantum_limited", c.noise.quantum_limited},
                {"topology", to_string(c.topology)},
                {"prior", prior},
                {"grid", {{"n", c.n}, {"dt", c.dt}}},
                {"trials", c.trials},
                {"seed", c.seed},
                {"kalman", c.kalman}};
}

std::string config_hash(const ExperimentConfig& config) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json(config).dump())));
    return buffer;
}

std::vector<std::string> config_warnings(const ExperimentConfig& config) {
    return stationarity_warnings(config.sensor(), config.prior, config.time_grid());
}

}  // namespace qforce::cli
