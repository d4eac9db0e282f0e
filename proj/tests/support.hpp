#pragma once

#include <fxcast/app/config.hpp>
#include <fxcast/app/ingest.hpp>
#include <fxcast/series.hpp>

#include <json.hpp>

#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fxcast::fixtures {

inline std::string snapshot_path() { return std::string(FXCAST_DATA_DIR) + "/usdtry_2022.csv"; }
inline std::string default_config_path() { return std::string(FXCAST_CONFIG_DIR) + "/default.json"; }

/// Independent reference values produced by scripts/reference_golden.py.
inline const nlohmann::json& reference() {
    static const nlohmann::json j = [] {
        std::ifstream in(std::string(FXCAST_TEST_DATA_DIR) + "/reference_values.json");
        return nlohmann::json::parse(in);
    }();
    return j;
}

inline ReturnSeries snapshot_returns() { return compute_returns(app::ingest_csv(snapshot_path())); }

inline std::vector<double> snapshot_train() {
    const auto r = snapshot_returns();
    const auto n = reference().at("n_train").get<std::size_t>();
    return {r.values().begin(), r.values().begin() + static_cast<std::ptrdiff_t>(n)};
}

/// The shipped configuration with the input path made absolute.
inline app::PipelineConfig snapshot_config() {
    auto cfg = app::load_config(default_config_path());
    cfg.input.path = snapshot_path();
    return cfg;
}

inline std::vector<double> normal_draws(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> dist(0.0, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace fxcast::fixtures
