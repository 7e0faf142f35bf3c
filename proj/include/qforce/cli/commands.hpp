#ifndef QFORCE_CLI_COMMANDS_HPP
#define QFORCE_CLI_COMMANDS_HPP

#include "qforce/cli/config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace qforce::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Dense-matrix cap of the fisher subcommand without --circulant-fast.
inline constexpr std::size_t kDenseFisherCap = 8192;

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    std::uint64_t trial_index = 0;                    ///< simulate / estimate
    std::optional<std::filesystem::path> record;      ///< estimate: trajectory CSV to read
    bool circulant_fast = false;                      ///< fisher: skip the dense matrix
};

// Each command computes everything first and then writes its files, so a
// failure leaves no partial output. Returns the paths written.

std::vector<std::filesystem::path> cmd_bound(const ExperimentConfig& config, const CommandOptions& options);
std::vector<std::filesystem::path> cmd_simulate(const ExperimentConfig& config, const CommandOptions& options);
std::vector<std::filesystem::path> cmd_estimate(const ExperimentConfig& config, const CommandOptions& options);
std::vector<std::filesystem::path> cmd_montecarlo(const ExperimentConfig& config, const CommandOptions& options);
std::vector<std::filesystem::path> cmd_fisher(const ExperimentConfig& config, const CommandOptions& options);

}  // namespace qforce::cli

#endif  // QFORCE_CLI_COMMANDS_HPP
