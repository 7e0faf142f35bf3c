#include "qforce/bounds.hpp"
#include "qforce/cli/commands.hpp"
#include "qforce/cli/config.hpp"
#include "qforce/cli/csv.hpp"
#include "qforce/error.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qforce;
using namespace qforce::cli;
using nlohmann::json;

namespace {

json small_config() {
    return json{{"m", 1.0},
                {"omega_m", 1.0},
                {"gamma", 1e-3},
                {"s_xi", 0.5},
                {"quantum_limited", true},
                {"topology", "qnc"},
                {"prior", {{"type", "ou"}, {"kappa", 0.2}, {"p_var", 1.0}}},
                {"grid", {{"n", 1024}, {"dt", 0.05}}},
                {"trials", 8},
                {"seed", 42}};
}

std::string config_error_key(const json& document) {
    try {
        parse_config(document);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

CommandOptions options_in(const std::filesystem::path& dir) {
    CommandOptions options;
    options.out_dir = dir;
    return options;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
    const auto config = parse_config(small_config());
    CHECK(config.noise.s_eta == doctest::Approx(0.5));
    CHECK(config.topology == Topology::Qnc);
    CHECK(config.n == 1024);
    CHECK(config_hash(config) == config_hash(parse_config(to_json(config))));

    auto doc = small_config();
    doc.erase("gamma");
    CHECK(parse_config(doc).oscillator.gamma == doctest::Approx(1e-3));

    SUBCASE("errors name the offending key") {
        auto unknown = small_config();
        unknown["colour"] = 1;
        CHECK(config_error_key(unknown) == "colour");
        auto missing = small_config();
        missing.erase("omega_m");
        CHECK(config_error_key(missing) == "omega_m");
        auto odd = small_config();
        odd["grid"]["n"] = 1023;
        CHECK(config_error_key(odd).find("n") != std::string::npos);
        auto topology = small_config();
        topology["topology"] = "sideways";
        CHECK(config_error_key(topology) == "topology");
        auto subquantum = small_config();
        subquantum["quantum_limited"] = false;
        subquantum["s_eta"] = 0.1;
        CHECK(config_error_key(subquantum) == "s_eta");
        auto negative = small_config();
        negative["prior"]["kappa"] = -1.0;
        CHECK(config_error_key(negative).find("kappa") != std::string::npos);
    }
}

TEST_CASE("csv formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.9}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("bound command writes the spectra and the point bound") {
    TempDir dir("qforce_test_bound");
    const auto config = parse_config(small_config());
    const auto written = cmd_bound(config, options_in(dir.path));
    CHECK(written.size() == 2);
    const auto spectra = read_csv(dir.path / "bound_spectra.csv");
    CHECK(spectra.rows.size() == 1024);
    const auto omega = spectra.column("omega");
    for (std::size_t i = 1; i < omega.size(); ++i) CHECK(omega[i] > omega[i - 1]);
    const auto summary = read_summary(dir.path / "bound_summary.csv");
    CHECK(summary.at("pi_min") == point_qcrb(config.sensor(), config.prior, config.frequency_grid()));
    CHECK(slurp(dir.path / "bound_spectra.csv").rfind("# qforce", 0) == 0);
}

TEST_CASE("montecarlo outputs do not depend on the thread count") {
    auto doc = small_config();
    doc["kalman"] = true;
    const auto config = parse_config(doc);
    TempDir a("qforce_test_mc_a");
    TempDir b("qforce_test_mc_b");
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto files = cmd_montecarlo(config, options_in(a.path));
    omp_set_num_threads(4);
    cmd_montecarlo(config, options_in(b.path));
    omp_set_num_threads(saved);
    for (const auto& f : files) {
        CAPTURE(f.string());
        CHECK(slurp(f) == slurp(b.path / f.filename()));
    }
}

TEST_CASE("estimate from a recorded trajectory matches the in-process estimate") {
    const auto config = parse_config(small_config());
    TempDir dir("qforce_test_estimate");
    auto options = options_in(dir.path);
    options.trial_index = 3;
    cmd_simulate(config, options);
    cmd_estimate(config, options);
    const auto direct = read_csv(dir.path / "estimate.csv");

    TempDir replay("qforce_test_estimate_replay");
    auto from_file = options_in(replay.path);
    from_file.trial_index = 3;
    from_file.record = dir.path / "trajectory.csv";
    cmd_estimate(config, from_file);
    const auto replayed = read_csv(replay.path / "estimate.csv");
    CHECK(direct.column("x_hat") == replayed.column("x_hat"));
}

TEST_CASE("fisher command") {
    const auto config = parse_config(small_config());
    TempDir dir("qforce_test_fisher");
    cmd_fisher(config, options_in(dir.path));
    const auto report = read_summary(dir.path / "fisher_report.csv");
    CHECK(report.at("n") == 1024.0);
    CHECK(report.at("relative_difference") < 1e-10);
    CHECK(report.at("min_eigenvalue_total") > 0.0);
    CHECK(slurp(dir.path / "fisher_report.csv").find("path: dense") != std::string::npos);

    SUBCASE("oversized dense request fails before writing anything") {
        auto big = small_config();
        big["grid"]["n"] = 16384;
        TempDir none("qforce_test_fisher_big");
        CHECK_THROWS_AS(cmd_fisher(parse_config(big), options_in(none.path)), Error);
        CHECK_FALSE(std::filesystem::exists(none.path / "fisher_report.csv"));
    }
    SUBCASE("band-limited prior has no prior Fisher matrix") {
        auto band = small_config();
        band["prior"] = {{"type", "band_limited"}, {"s0", 1.0}, {"omega_c", 1.0}};
        TempDir none("qforce_test_fisher_band");
        CHECK_THROWS_AS(cmd_fisher(parse_config(band), options_in(none.path)), SingularPriorError);
    }
}
