#include "qforce/campaign.hpp"

#include "qforce/error.hpp"
#include "qforce/estimate.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <exception>
#include <mutex>
#include <string>

namespace qforce {
namespace {

CampaignResult assemble(std::vector<TrialOutcome> outcomes, const TimeGrid& grid) {
    CampaignResult result{std::move(outcomes), {}, {}, SampledSpectrum::zero(FrequencyGrid(grid)), {}, {}};
    const auto count = result.trials.size();

    std::vector<double> mse(count);
    std::vector<double> bias(count);
    std::vector<double> spectrum(grid.size(), 0.0);
    for (std::size_t t = 0; t < count; ++t) {
        const auto& trial = result.trials[t];
        mse[t] = trial.wiener_mse;
        bias[t] = trial.error_mean;
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            spectrum[i] += trial.error_periodogram[i];
        }
    }
    for (auto& v : spectrum) {
        v /= static_cast<double>(count);
    }
    result.wiener_mse = sample_stats(mse);
    result.error_mean = sample_stats(bias);
    result.error_spectrum = SampledSpectrum(FrequencyGrid(grid), std::move(spectrum));

    if (count > 0 && result.trials.front().rts_mse) {
        std::vector<double> filt(count);
        std::vector<double> smooth(count);
        for (std::size_t t = 0; t < count; ++t) {
            filt[t] = *result.trials[t].kalman_filter_mse;
            smooth[t] = *result.trials[t].rts_mse;
        }
        result.kalman_filter_mse = sample_stats(filt);
        result.rts_mse = sample_stats(smooth);
    }
    return result;
}

void check_settings(const CampaignSettings& settings) {
    if (settings.trials < 2) {
        throw Error("campaign: at least 2 trials are required");
    }
}

}  // namespace

TrialOutcome run_trial(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                       const SeedSpec& seed, bool run_kalman) {
    const auto trajectory = simulate_record(sensor, prior, grid, seed);
    auto scored = score_estimate(wiener_smoother(trajectory.y, sensor, prior, grid), trajectory.x, grid);

    TrialOutcome out;
    out.wiener_mse = scored.empirical_mse;
    out.error_periodogram.assign(scored.error_spectrum.values().begin(), scored.error_spectrum.values().end());
    double sum = 0.0;
    for (std::size_t j = 0; j < trajectory.x.size(); ++j) {
        sum += scored.estimate[j] - trajectory.x[j];
    }
    out.error_mean = sum / static_cast<double>(trajectory.x.size());

    if (run_kalman) {
        const auto model = build_state_space(sensor, prior, grid);
        const auto filtered = kalman_filter(trajectory.y, model);
        const auto smoothed = rts_smoother(filtered, model);
        out.kalman_filter_mse = interior_mse(filtered.force_estimate, trajectory.x);
        out.rts_mse = interior_mse(smoothed.force_estimate, trajectory.x);
    }
    return out;
}

SampleStats sample_stats(const std::vector<double>& values) {
    SampleStats s;
    s.count = values.size();
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        const double variance = ss / static_cast<double>(values.size() - 1);
        s.standard_error = std::sqrt(variance / static_cast<double>(values.size()));
    }
    return s;
}

CampaignResult run_campaign(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                            const CampaignSettings& settings) {
    check_settings(settings);
    const auto count = static_cast<long>(settings.trials);
    std::vector<TrialOutcome> outcomes(settings.trials);

    // lowest failing index; trials above it are skipped, trials below still run,
    // so the reported index does not depend on the schedule
    std::atomic<long> failed_trial{std::numeric_limits<long>::max()};
    std::mutex failure_mutex;
    std::string failure;

#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < count; ++t) {
        if (t > failed_trial.load()) {
            continue;
        }
        try {
            outcomes[static_cast<std::size_t>(t)] =
                run_trial(sensor, prior, grid, SeedSpec{settings.master_seed, static_cast<std::uint64_t>(t)},
                          settings.run_kalman);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (t < failed_trial.load()) {
                failed_trial.store(t);
                failure = e.what();
            }
        }
    }
    if (failed_trial.load() != std::numeric_limits<long>::max()) {
        throw Error("campaign: trial " + std::to_string(failed_trial.load()) + " failed: " + failure);
    }
    return assemble(std::move(outcomes), grid);
}

CampaignResult run_campaign_serial(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                                   const CampaignSettings& settings) {
    check_settings(settings);
    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(settings.trials);
    for (std::size_t t = 0; t < settings.trials; ++t) {
        try {
            outcomes.push_back(run_trial(sensor, prior, grid, SeedSpec{settings.master_seed, t}, settings.run_kalman));
        } catch (const std::exception& e) {
            throw Error("campaign: trial " + std::to_string(t) + " failed: " + e.what());
        }
    }
    return assemble(std::move(outcomes), grid);
}

}  // namespace qforce
