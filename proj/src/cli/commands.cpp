#include "qforce/cli/commands.hpp"

#include "qforce/bounds.hpp"
#include "qforce/campaign.hpp"
#include "qforce/circulant.hpp"
#include "qforce/cli/csv.hpp"
#include "qforce/error.hpp"
#include "qforce/estimate.hpp"
#include "qforce/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace qforce::cli {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> metadata(const ExperimentConfig& config, const std::string& command) {
    return {std::string("qforce ") + kVersion, "command: " + command, "config_hash: " + config_hash(config),
            "seed: " + std::to_string(config.seed), "topology: " + std::string(to_string(config.topology))};
}

std::vector<std::filesystem::path> write_all(const std::filesystem::path& dir,
                                             const std::vector<std::pair<std::string, std::string>>& files) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : files) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + path.string());
        }
        out << content;
        written.push_back(path);
    }
    return written;
}

CsvTable trajectory_table(const std::vector<std::string>& meta, const Trajectory& t,
                          const std::vector<double>* estimate) {
    std::vector<std::string> columns{"t", "x", "xi", "eta", "position", "y"};
    if (estimate) {
        columns.insert(columns.end(), {"x_hat", "err"});
    }
    CsvTable table(meta, columns);
    std::vector<double> row(columns.size());
    for (std::size_t j = 0; j < t.x.size(); ++j) {
        row[0] = t.grid.time(j);
        row[1] = t.x[j];
        row[2] = t.xi[j];
        row[3] = t.eta[j];
        row[4] = t.position[j];
        row[5] = t.y[j];
        if (estimate) {
            row[6] = (*estimate)[j];
            row[7] = (*estimate)[j] - t.x[j];
        }
        table.add_row(row);
    }
    return table;
}

Trajectory read_trajectory(const std::filesystem::path& path, const TimeGrid& grid) {
    const auto data = read_csv(path);
    Trajectory t{grid, data.column("x"), data.column("xi"), data.column("eta"), data.column("position"),
                 data.column("y")};
    if (t.y.size() != grid.size()) {
        throw LengthMismatchError("record " + path.string() + " has " + std::to_string(t.y.size()) +
                                  " samples, config grid has " + std::to_string(grid.size()));
    }
    return t;
}

}  // namespace

std::vector<std::filesystem::path> cmd_bound(const ExperimentConfig& config, const CommandOptions& options) {
    const auto sensor = config.sensor();
    const auto grid = config.frequency_grid();
    const auto s_dx = prior_spectrum(config.prior, grid);
    const auto s_dq = quantum_fisher_spectrum(sensor, grid);
    const auto s_z = observation_noise_spectrum(sensor, grid);
    const auto report = compute_bounds(sensor, config.prior, grid);
    const auto smoother = smoother_error_spectrum(s_dx, s_z);

    const auto meta = metadata(config, "bound");
    CsvTable spectra(meta, {"omega", "s_dx", "s_dq", "s_z", "s_sql", "c_min"});
    for (auto i : grid.monotone_order()) {
        spectra.add_row({grid.omega(i), s_dx[i], s_dq[i], s_z[i], report.s_sql[i], report.c_min[i]});
    }
    SummaryTable summary(meta);
    summary.add("pi_min", report.pi_min);
    summary.add("prior_variance", spectrum_integral(s_dx));
    summary.add("smoother_pi", spectrum_integral(smoother));
    return write_all(options.out_dir, {{"bound_spectra.csv", spectra.str()}, {"bound_summary.csv", summary.str()}});
}

std::vector<std::filesystem::path> cmd_simulate(const ExperimentConfig& config, const CommandOptions& options) {
    const auto trajectory =
        simulate_record(config.sensor(), config.prior, config.time_grid(), SeedSpec{config.seed, options.trial_index});
    auto meta = metadata(config, "simulate");
    meta.push_back("trial_index: " + std::to_string(options.trial_index));
    return write_all(options.out_dir, {{"trajectory.csv", trajectory_table(meta, trajectory, nullptr).str()}});
}

std::vector<std::filesystem::path> cmd_estimate(const ExperimentConfig& config, const CommandOptions& options) {
    const auto sensor = config.sensor();
    const auto grid = config.time_grid();
    const auto trajectory = options.record ? read_trajectory(*options.record, grid)
                                           : simulate_record(sensor, config.prior, grid,
                                                             SeedSpec{config.seed, options.trial_index});
    auto result = score_estimate(wiener_smoother(trajectory.y, sensor, config.prior, grid), trajectory.x, grid);

    auto meta = metadata(config, "estimate");
    meta.push_back(options.record ? "record: " + options.record->filename().string()
                                  : "trial_index: " + std::to_string(options.trial_index));
    SummaryTable summary(meta);
    summary.add("empirical_mse", result.empirical_mse);
    summary.add("smoother_pi", spectrum_integral(smoother_error_spectrum(sensor, config.prior, config.frequency_grid())));
    summary.add("pi_min", point_qcrb(sensor, config.prior, config.frequency_grid()));
    if (config.kalman) {
        const auto model = build_state_space(sensor, config.prior, grid);
        const auto filtered = kalman_filter(trajectory.y, model);
        const auto smoothed = rts_smoother(filtered, model);
        summary.add("kalman_filter_interior_mse", interior_mse(filtered.force_estimate, trajectory.x));
        summary.add("kalman_filter_steady_variance", filtered.steady_state_force_variance);
        summary.add("rts_interior_mse", interior_mse(smoothed.force_estimate, trajectory.x));
        summary.add("rts_interior_variance", smoothed.interior_force_variance);
    }
    return write_all(options.out_dir, {{"estimate.csv", trajectory_table(meta, trajectory, &result.estimate).str()},
                                       {"estimate_summary.csv", summary.str()}});
}

std::vector<std::filesystem::path> cmd_montecarlo(const ExperimentConfig& config, const CommandOptions& options) {
    if (config.trials < 2) {
        throw ConfigError("trials", "montecarlo needs at least 2 trials");
    }
    const auto sensor = config.sensor();
    const auto grid = config.frequency_grid();
    const auto campaign =
        run_campaign(sensor, config.prior, config.time_grid(), CampaignSettings{config.trials, config.seed, config.kalman});

    const auto s_dx = prior_spectrum(config.prior, grid);
    const auto s_z = observation_noise_spectrum(sensor, grid);
    const auto report = compute_bounds(sensor, config.prior, grid);
    const auto smoother = smoother_error_spectrum(s_dx, s_z);

    auto meta = metadata(config, "montecarlo");
    meta.push_back("trials: " + std::to_string(config.trials));

    CsvTable spectra(meta, {"omega", "s_dx", "s_z", "s_sql", "c_min", "smoother", "achieved", "saturation_ratio"});
    for (auto i : grid.monotone_order()) {
        const double achieved = campaign.error_spectrum[i];
        const double ratio = report.c_min[i] > 0.0 ? achieved / report.c_min[i] : kNan;
        spectra.add_row({grid.omega(i), s_dx[i], s_z[i], report.s_sql[i], report.c_min[i], smoother[i], achieved, ratio});
    }

    SummaryTable summary(meta);
    summary.add("trials", static_cast<double>(campaign.wiener_mse.count));
    summary.add("pi_min", report.pi_min);
    summary.add("smoother_pi", spectrum_integral(smoother));
    summary.add("empirical_pi", campaign.wiener_mse.mean);
    summary.add("empirical_pi_stderr", campaign.wiener_mse.standard_error);
    summary.add("empirical_over_pi_min", campaign.wiener_mse.mean / report.pi_min);
    summary.add("empirical_over_pi_min_stderr", campaign.wiener_mse.standard_error / report.pi_min);
    summary.add("error_mean", campaign.error_mean.mean);
    summary.add("error_mean_stderr", campaign.error_mean.standard_error);
    if (campaign.rts_mse) {
        const auto model = build_state_space(sensor, config.prior, config.time_grid());
        // covariance recursions do not depend on the data; a zero record suffices
        const auto filtered = kalman_filter(std::vector<double>(config.n, 0.0), model);
        const auto smoothed = rts_smoother(filtered, model);
        summary.add("kalman_filter_interior_mse", campaign.kalman_filter_mse->mean);
        summary.add("kalman_filter_interior_mse_stderr", campaign.kalman_filter_mse->standard_error);
        summary.add("kalman_filter_steady_variance", filtered.steady_state_force_variance);
        summary.add("rts_interior_mse", campaign.rts_mse->mean);
        summary.add("rts_interior_mse_stderr", campaign.rts_mse->standard_error);
        summary.add("rts_interior_variance", smoothed.interior_force_variance);
    }

    std::vector<std::string> trial_columns{"trial", "wiener_mse"};
    if (campaign.rts_mse) {
        trial_columns.insert(trial_columns.end(), {"kalman_filter_mse", "rts_mse"});
    }
    CsvTable trials(meta, trial_columns);
    for (std::size_t t = 0; t < campaign.trials.size(); ++t) {
        const auto& o = campaign.trials[t];
        if (campaign.rts_mse) {
            trials.add_row({static_cast<double>(t), o.wiener_mse, *o.kalman_filter_mse, *o.rts_mse});
        } else {
            trials.add_row({static_cast<double>(t), o.wiener_mse});
        }
    }
    return write_all(options.out_dir, {{"montecarlo_spectra.csv", spectra.str()},
                                       {"montecarlo_summary.csv", summary.str()},
                                       {"montecarlo_trials.csv", trials.str()}});
}

std::vector<std::filesystem::path> cmd_fisher(const ExperimentConfig& config, const CommandOptions& options) {
    if (!std::holds_alternative<OrnsteinUhlenbeck>(config.prior)) {
        throw SingularPriorError(
            "fisher: the prior Fisher matrix needs a strictly positive prior spectrum; band-limited priors are "
            "served by the bound subcommand only");
    }
    if (config.n > kDenseFisherCap && !options.circulant_fast) {
        throw Error("fisher: n = " + std::to_string(config.n) + " exceeds the dense-matrix cap of " +
                    std::to_string(kDenseFisherCap) + "; pass --circulant-fast");
    }
    const auto sensor = config.sensor();
    const auto grid = config.frequency_grid();
    const auto fm = fisher_matrices(sensor, config.prior, grid);
    const auto total = fm.total();

    std::vector<double> lambda;
    if (options.circulant_fast) {
        lambda = total.eigenvalues();
    } else {
        lambda = circulant_eigenvalues(total.dense());
    }
    double inverse_sum = 0.0;
    for (double l : lambda) {
        if (!(l > 0.0)) {
            throw SingularFisherError("fisher: total Fisher matrix has a non-positive eigenvalue");
        }
        inverse_sum += 1.0 / l;
    }
    const double matrix_bound = inverse_sum / static_cast<double>(lambda.size());
    const double spectral_bound = point_qcrb(sensor, config.prior, grid);

    const auto lq = fm.f_quantum.eigenvalues();
    const auto lc = fm.f_classical.eigenvalues();
    auto meta = metadata(config, "fisher");
    meta.push_back(std::string("path: ") + (options.circulant_fast ? "circulant" : "dense"));
    SummaryTable summary(meta);
    summary.add("n", static_cast<double>(config.n));
    summary.add("matrix_point_bound", matrix_bound);
    summary.add("point_qcrb", spectral_bound);
    summary.add("relative_difference", std::abs(matrix_bound - spectral_bound) / spectral_bound);
    summary.add("min_eigenvalue_total", *std::min_element(lambda.begin(), lambda.end()));
    summary.add("max_eigenvalue_total", *std::max_element(lambda.begin(), lambda.end()));
    summary.add("min_eigenvalue_quantum", *std::min_element(lq.begin(), lq.end()));
    summary.add("max_eigenvalue_quantum", *std::max_element(lq.begin(), lq.end()));
    summary.add("min_eigenvalue_classical", *std::min_element(lc.begin(), lc.end()));
    summary.add("max_eigenvalue_classical", *std::max_element(lc.begin(), lc.end()));
    return write_all(options.out_dir, {{"fisher_report.csv", summary.str()}});
}

}  // namespace qforce::cli
