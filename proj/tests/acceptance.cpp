// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "qforce/bounds.hpp"
#include "qforce/campaign.hpp"
#include "qforce/circulant.hpp"
#include "qforce/cli/commands.hpp"
#include "qforce/cli/config.hpp"
#include "qforce/estimate.hpp"
#include "qforce/fft.hpp"
#include "qforce/sim.hpp"

#include <CLI11.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

namespace {

using namespace qforce;

struct Outcome {
    bool pass;
    std::string detail;
};

OscillatorParams reference_oscillator() { return OscillatorParams{1.0, 1.0, 1e-3, 1.0}; }
PriorModel reference_prior() { return OrnsteinUhlenbeck{0.2, 1.0}; }
TimeGrid reference_grid() { return TimeGrid(32768, 0.05); }

SensorModel sensor_with(double s_xi, Topology topology) {
    return SensorModel(reference_oscillator(), NoiseModel::at_quantum_limit(s_xi, 1.0), topology);
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Adaptive quadrature of the continuous bound integrand over [-w_max, w_max].
double quadrature_pi_min(const OscillatorParams& o, double s_xi, double kappa, double p, double w_max) {
    auto integrand = [&](double w) {
        const double re = o.omega_m * o.omega_m - w * w;
        const double g2 = 1.0 / (o.mass * o.mass * (re * re + o.gamma * o.gamma * w * w));
        const double s_dx = 2.0 * kappa * p / (kappa * kappa + w * w);
        return 1.0 / (4.0 * g2 * s_xi / (o.hbar * o.hbar) + 1.0 / s_dx) / std::numbers::pi;
    };
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(integrand, 0.0, o.omega_m, 20, 1e-13) +
           gauss_kronrod<double, 61>::integrate(integrand, o.omega_m, w_max, 20, 1e-13);
}

Outcome qnc_saturation() {
    const auto sensor = sensor_with(0.5, Topology::Qnc);
    const auto grid = reference_grid();
    const FrequencyGrid f(grid);
    const auto smoother = smoother_error_spectrum(sensor, reference_prior(), f);
    const auto bound = spectral_qcrb(sensor, reference_prior(), f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, relative(smoother[i], bound[i]));

    const double pi_min = spectrum_integral(bound);
    CampaignSettings settings{200, 20121016, false};
    const auto mc = run_campaign(sensor, reference_prior(), grid, settings);
    const double gap = std::abs(mc.wiener_mse.mean - pi_min);
    const bool pass = worst <= 1e-9 && gap <= 3.0 * mc.wiener_mse.standard_error && gap <= 0.05 * pi_min;
    return {pass, "max pointwise rel diff " + fmt(worst) + ", empirical " + fmt(mc.wiener_mse.mean) + " +- " +
                      fmt(mc.wiener_mse.standard_error) + " vs pi_min " + fmt(pi_min)};
}

Outcome sql_inequality() {
    const FrequencyGrid f(reference_grid());
    const auto sensor = sensor_with(0.5, Topology::Standard);
    const auto s_z = observation_noise_spectrum(sensor, f);
    const auto sql = sql_spectrum(sensor, f);
    double slack = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) slack = std::min(slack, s_z[i] - sql[i]);

    // Tune S_xi so that S_xi = hbar / (2|G|) falls exactly on one bin.
    const std::size_t k = 1000;
    const double g_abs = std::abs(transfer_at(reference_oscillator(), f.omega(k)));
    const auto tuned = sensor_with(1.0 / (2.0 * g_abs), Topology::Standard);
    const auto s_z_tuned = observation_noise_spectrum(tuned, f);
    const auto sql_tuned = sql_spectrum(tuned, f);
    const double at_bin = std::max(relative(s_z_tuned[k], sql_tuned[k]),
                                   relative(s_z_tuned[f.mirror(k)], sql_tuned[f.mirror(k)]));
    double tuned_slack = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) tuned_slack = std::min(tuned_slack, s_z_tuned[i] - sql_tuned[i]);

    const bool pass = slack >= -1e-12 && tuned_slack >= -1e-12 && at_bin <= 1e-9;
    return {pass, "min(S_z - S_SQL) " + fmt(std::min(slack, tuned_slack)) + ", rel diff at tuned bin " + fmt(at_bin)};
}

Outcome sql_gap() {
    const auto sensor = sensor_with(0.5, Topology::Standard);
    const auto grid = reference_grid();
    const double pi_min = point_qcrb(sensor, reference_prior(), FrequencyGrid(grid));
    CampaignSettings settings{200, 20121016, false};
    const auto mc = run_campaign(sensor, reference_prior(), grid, settings);
    const double ratio = mc.wiener_mse.mean / pi_min;
    const double ratio_se = mc.wiener_mse.standard_error / pi_min;
    return {ratio - 1.0 > 3.0 * ratio_se, "empirical/pi_min " + fmt(ratio) + " +- " + fmt(ratio_se)};
}

Outcome matrix_spectral() {
    const auto sensor = sensor_with(0.5, Topology::Standard);
    const FrequencyGrid small(TimeGrid(4096, 0.05));
    const auto fm = fisher_matrices(sensor, reference_prior(), small);
    const auto lambda = circulant_eigenvalues(fm.total().dense());
    double inverse_sum = 0.0;
    for (double l : lambda) inverse_sum += 1.0 / l;
    const double dense_bound = inverse_sum / static_cast<double>(lambda.size());
    const double spectral = point_qcrb(sensor, reference_prior(), small);
    const double matrix_rel = std::max(relative(dense_bound, spectral), relative(matrix_point_bound(fm), spectral));

    const FrequencyGrid f(reference_grid());
    const double pi_min = point_qcrb(sensor, reference_prior(), f);
    const double oracle = quadrature_pi_min(reference_oscillator(), 0.5, 0.2, 1.0, std::numbers::pi / f.dt());
    const double quad_rel = relative(pi_min, oracle);
    return {matrix_rel <= 1e-10 && quad_rel <= 0.01,
            "matrix vs spectral (n=4096) " + fmt(matrix_rel) + ", grid " + fmt(pi_min) + " vs quadrature " +
                fmt(oracle) + " (rel " + fmt(quad_rel) + ")"};
}

Outcome prior_degeneration() {
    const FrequencyGrid f(reference_grid());
    const double p = prior_variance(reference_prior());
    const double standard = point_qcrb(sensor_with(1e-12, Topology::Standard), reference_prior(), f);
    const double qnc = point_qcrb(sensor_with(1e-12, Topology::Qnc), reference_prior(), f);
    const bool pass = relative(standard, p) <= 0.01 && relative(qnc, p) <= 0.01 && relative(p, 1.0) <= 1e-15;
    return {pass, "pi_min " + fmt(standard) + " (Standard), " + fmt(qnc) + " (QNC) vs P " + fmt(p)};
}

Outcome estimator_ordering() {
    const auto grid = reference_grid();
    const FrequencyGrid f(grid);
    bool pass = true;
    std::string detail;
    for (auto topology : {Topology::Standard, Topology::Qnc}) {
        const auto sensor = sensor_with(0.5, topology);
        const auto model = build_state_space(sensor, reference_prior(), grid);
        const auto t = simulate_record(sensor, reference_prior(), grid, SeedSpec{20121016, 0});
        const auto filter = kalman_filter(t.y, model);
        const auto smoother = rts_smoother(filter, model);
        const double integral = spectrum_integral(smoother_error_spectrum(sensor, reference_prior(), f));
        const double rel = relative(smoother.interior_force_variance, integral);
        pass = pass && filter.steady_state_force_variance > smoother.interior_force_variance && rel <= 0.02;
        detail += std::string(to_string(topology)) + ": filter " + fmt(filter.steady_state_force_variance) +
                  " > RTS " + fmt(smoother.interior_force_variance) + " vs spectrum " + fmt(integral) + " (rel " +
                  fmt(rel) + "); ";
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome synthesis_fidelity() {
    const auto sensor = sensor_with(0.5, Topology::Standard);
    const auto grid = reference_grid();
    const FrequencyGrid f(grid);
    const auto g = transfer_function(sensor.oscillator(), f);
    const int trials = 500;

    const std::vector<SampledSpectrum> targets{prior_spectrum(reference_prior(), f),
                                               SampledSpectrum::constant(f, sensor.noise().s_xi),
                                               SampledSpectrum::constant(f, sensor.noise().s_eta),
                                               observation_noise_spectrum(sensor, f)};
    std::vector<std::vector<double>> sums(4, std::vector<double>(f.size(), 0.0));
#pragma omp parallel
    {
        std::vector<std::vector<double>> local(4, std::vector<double>(f.size(), 0.0));
#pragma omp for schedule(static)
        for (int trial = 0; trial < trials; ++trial) {
            const auto t = simulate_record(sensor, reference_prior(), grid,
                                           SeedSpec{20121016, static_cast<std::uint64_t>(trial)});
            // force-referred noise z = y / G - x
            auto z = fft::forward(t.y);
            const auto x_hat = fft::forward(t.x);
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = z[i] / g[i] - x_hat[i];
            const std::vector<std::vector<double>> records{t.x, t.xi, t.eta, fft::inverse_real(z)};
            for (int s = 0; s < 4; ++s) {
                const auto p = periodogram(records[s], grid);
                for (std::size_t i = 0; i < f.size(); ++i) local[s][i] += p[i];
            }
        }
#pragma omp critical
        for (int s = 0; s < 4; ++s)
            for (std::size_t i = 0; i < f.size(); ++i) sums[s][i] += local[s][i];
    }
    double worst = 0.0;
    std::string detail = "integrated abs error x/xi/eta/z:";
    for (int s = 0; s < 4; ++s) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            num += std::abs(sums[s][i] / trials - targets[s][i]);
            den += targets[s][i];
        }
        worst = std::max(worst, num / den);
        detail += " " + fmt(num / den);
    }

    // circulant identities
    const FrequencyGrid small(TimeGrid(512, 0.05));
    const auto spectrum = prior_spectrum(reference_prior(), small);
    const auto fast = circulant_covariance(spectrum);
    const auto slow = circulant_covariance_reference(spectrum);
    double scale = fast(0, 0);
    double identity = 0.0;
    for (std::size_t m = 0; m < small.size(); ++m) identity = std::max(identity, std::abs(fast(0, m) - slow(0, m)) / scale);
    const auto ev = circulant_eigenvalues(fast.dense());
    double ev_max = *std::max_element(ev.begin(), ev.end());
    for (std::size_t k = 0; k < small.size(); ++k)
        identity = std::max(identity, std::abs(ev[k] - spectrum[k] / small.dt()) / ev_max);
    const Eigen::MatrixXd inverse = fast.dense().inverse();
    identity = std::max(identity, relative(inverse(7, 7), fast.inverse_diagonal()));
    detail += ", circulant identities " + fmt(identity);
    return {worst <= 0.05 && identity <= 1e-10, detail};
}

cli::CommandOptions options_in(const std::filesystem::path& dir) {
    cli::CommandOptions options;
    options.out_dir = dir;
    return options;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism(const std::filesystem::path& out) {
    cli::ExperimentConfig config;
    config.oscillator = reference_oscillator();
    config.noise = NoiseModel::at_quantum_limit(0.5, 1.0);
    config.topology = Topology::Standard;
    config.prior = reference_prior();
    config.n = 4096;
    config.dt = 0.05;
    config.trials = 32;
    config.seed = 20121016;
    config.kalman = true;

    using Command = std::function<std::vector<std::filesystem::path>(const cli::ExperimentConfig&,
                                                                     const cli::CommandOptions&)>;
    const std::vector<std::pair<std::string, Command>> commands{{"bound", cli::cmd_bound},
                                                                {"simulate", cli::cmd_simulate},
                                                                {"estimate", cli::cmd_estimate},
                                                                {"montecarlo", cli::cmd_montecarlo},
                                                                {"fisher", cli::cmd_fisher}};
    const int saved = omp_get_max_threads();
    const int many = std::max(4, saved);
    std::size_t compared = 0;
    std::string mismatch;
    for (const auto& [name, command] : commands) {
        omp_set_num_threads(1);
        const auto first = command(config, options_in(out / (name + "_a")));
        omp_set_num_threads(many);
        command(config, options_in(out / (name + "_b")));
        for (const auto& path : first) {
            ++compared;
            if (slurp(path) != slurp(out / (name + "_b") / path.filename())) mismatch += " " + path.filename().string();
        }
    }
    omp_set_num_threads(saved);
    if (!mismatch.empty()) return {false, "differing files:" + mismatch};
    return {true, std::to_string(compared) + " files byte-identical across 1 and " + std::to_string(many) +
                      " threads"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qforce acceptance suite"};
    std::string out = "acceptance_out";
    app.add_option("--out", out, "Scratch directory for the determinism check");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"QCRB saturation under QNC", qnc_saturation},
        {"SQL inequality", sql_inequality},
        {"SQL-limited gap (Standard)", sql_gap},
        {"matrix/spectral equivalence and quadrature oracle", matrix_spectral},
        {"prior-only degeneration", prior_degeneration},
        {"estimator ordering (filter > RTS, RTS vs spectrum)", estimator_ordering},
        {"synthesis fidelity and circulant identities", synthesis_fidelity},
        {"determinism across thread counts", [&] { return determinism(out); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome result{false, ""};
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!result.pass) ++failures;
        std::cout << (result.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
                  << result.detail << " (" << fmt(seconds) << " s)" << std::endl;
    }
    std::filesystem::remove_all(out);
    return failures == 0 ? 0 : 1;
}
