#ifndef QFORCE_CAMPAIGN_HPP
#define QFORCE_CAMPAIGN_HPP

#include "qforce/grids.hpp"
#include "qforce/models.hpp"
#include "qforce/sim.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qforce {

struct CampaignSettings {
    std::size_t trials = 200;
    std::uint64_t master_seed = 0;
    bool run_kalman = false;  ///< also run the filter/RTS smoother on every record
};

/// Outcome of one simulate -> estimate realization.
struct TrialOutcome {
    double wiener_mse = 0.0;
    std::vector<double> error_periodogram;
    double error_mean = 0.0;                ///< record average of x_hat - x
    std::optional<double> kalman_filter_mse;  ///< interior MSE of the causal filter
    std::optional<double> rts_mse;            ///< interior MSE of the RTS smoother
};

TrialOutcome run_trial(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                       const SeedSpec& seed, bool run_kalman);

struct SampleStats {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t count = 0;
};

/// Mean and standard error of the mean, summed in index order.
SampleStats sample_stats(const std::vector<double>& values);

struct CampaignResult {
    std::vector<TrialOutcome> trials;  ///< index-ordered
    SampleStats wiener_mse;
    SampleStats error_mean;
    SampledSpectrum error_spectrum;  ///< ensemble-averaged periodogram of x_hat - x
    std::optional<SampleStats> kalman_filter_mse;
    std::optional<SampleStats> rts_mse;
};

/// Trials run in parallel (OpenMP) into index-ordered slots, then reduced
/// serially; results do not depend on the thread count. A failed trial
/// aborts the campaign with its index.
CampaignResult run_campaign(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                            const CampaignSettings& settings);

/// Serial reference of run_campaign; bit-identical output.
CampaignResult run_campaign_serial(const SensorModel& sensor, const PriorModel& prior, const TimeGrid& grid,
                                   const CampaignSettings& settings);

}  // namespace qforce

#endif  // QFORCE_CAMPAIGN_HPP
