// qforce: quantum-limited force estimation bounds and Monte Carlo campaigns.

#include "qforce/cli/commands.hpp"
#include "qforce/cli/config.hpp"
#include "qforce/error.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using qforce::cli::CommandOptions;
using qforce::cli::ExperimentConfig;

struct Flags {
    std::string config;
    std::string out = ".";
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::uint64_t trial_index = 0;
    std::optional<std::string> record;
    bool circulant_fast = false;
};

void add_common(CLI::App* sub, Flags& flags) {
    sub->add_option("--config", flags.config, "Experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--trials", flags.trials, "Override the configured trial count");
    sub->add_option("--seed", flags.seed, "Override the configured master seed");
    sub->add_option("--threads", flags.threads, "Worker threads (overrides QFORCE_THREADS)")->check(CLI::PositiveNumber);
}

int resolve_threads(const Flags& flags) {
    if (flags.threads) {
        return *flags.threads;
    }
    if (const char* env = std::getenv("QFORCE_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) {
                return n;
            }
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid QFORCE_THREADS=" << env << '\n';
    }
    return omp_get_max_threads();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Cramer-Rao bounds and smoothing campaigns for continuous force sensing"};
    app.set_version_flag("--version", std::string(qforce::cli::kVersion));
    app.require_subcommand(1);

    Flags flags;
    auto* bound = app.add_subcommand("bound", "Bound spectra (c_min, SQL, S_z) and the point-error bound");
    auto* simulate = app.add_subcommand("simulate", "Simulate one trajectory (force, noises, position, record)");
    auto* estimate = app.add_subcommand("estimate", "Wiener-smooth one record and score it");
    auto* montecarlo = app.add_subcommand("montecarlo", "Simulate and estimate over many trials");
    auto* fisher = app.add_subcommand("fisher", "Matrix form of the bound and Fisher eigenvalue diagnostics");
    for (auto* sub : {bound, simulate, estimate, montecarlo, fisher}) {
        add_common(sub, flags);
    }
    for (auto* sub : {simulate, estimate}) {
        sub->add_option("--trial", flags.trial_index, "Trial index within the seeded ensemble");
    }
    estimate->add_option("--record", flags.record, "Trajectory CSV from `simulate` instead of simulating")
        ->check(CLI::ExistingFile);
    fisher->add_flag("--circulant-fast", flags.circulant_fast, "Skip the dense matrix (no size cap)");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig config = qforce::cli::load_config(flags.config);
        if (flags.trials) {
            if (*flags.trials < 1) {
                throw qforce::ConfigError("--trials", "must be >= 1");
            }
            config.trials = *flags.trials;
        }
        if (flags.seed) {
            config.seed = *flags.seed;
        }
        for (const auto& warning : qforce::cli::config_warnings(config)) {
            std::cerr << "warning: " << warning << '\n';
        }
        omp_set_num_threads(resolve_threads(flags));

        CommandOptions options;
        options.out_dir = flags.out;
        options.trial_index = flags.trial_index;
        if (flags.record) {
            options.record = *flags.record;
        }
        options.circulant_fast = flags.circulant_fast;

        const auto start = std::chrono::steady_clock::now();
        std::vector<std::filesystem::path> written;
        if (bound->parsed()) {
            written = qforce::cli::cmd_bound(config, options);
        } else if (simulate->parsed()) {
            written = qforce::cli::cmd_simulate(config, options);
        } else if (estimate->parsed()) {
            written = qforce::cli::cmd_estimate(config, options);
        } else if (montecarlo->parsed()) {
            written = qforce::cli::cmd_montecarlo(config, options);
        } else {
            written = qforce::cli::cmd_fisher(config, options);
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        for (const auto& path : written) {
            std::cerr << "wrote " << path.string() << '\n';
        }
        std::cerr << "elapsed " << elapsed.count() << " s\n";
    } catch (const qforce::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
