#pragma once

#include <fxcast/app/enum_names.hpp>
#include <fxcast/app/json_io.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fxcast::app {

struct InputSection {
    std::string path = "data/usdtry_2022.csv";
    std::string date_column = "date";
    std::string rate_column = "rate";
};

struct SplitSection {
    double train_fraction = 0.85;
    /// Overrides the fraction when set.
    std::optional<std::size_t> train_length;
};

struct TestsSection {
    double level = 0.05;
    LagRule adf_lag_rule = LagRule::aic;
    int adf_fixed_lag = 0;
    int bandwidth = -1;  // -1: Newey-West fixed rule
    RunsTies runs_ties = RunsTies::below;
    std::size_t correlogram_lags = 20;
    std::size_t ljung_box_lags = 6;  // lags p+q+1 .. p+q+ljung_box_lags
    int arch_lags = 1;
};

struct BreaksSection {
    std::size_t max_breaks = 5;
    double trimming = 0.15;
};

struct ModelOrder {
    int p = 0, d = 0, q = 0;

    ArimaSpec spec(bool include_constant) const { return {p, d, q, include_constant}; }
};

struct ArimaSection {
    bool select = true;
    int p_min = 1, p_max = 7;
    int q_min = 1, q_max = 7;
    int d = 1;
    bool include_constant = true;
    Criterion criterion = Criterion::bic;
    ForecastScheme scheme = ForecastScheme::static_multi_step;
    int max_iterations = 500;
    /// Order for the estimated-model block; the selection winner when absent.
    std::optional<ModelOrder> fit_order;
};

struct ModelsSection {
    std::vector<ModelOrder> arima{{2, 1, 2}, {4, 1, 2}, {6, 1, 2}, {2, 0, 0}, {4, 0, 0}, {6, 0, 0}, {0, 0, 2}};
    bool naive = true;
    bool mean = true;
    bool brown = true;
    bool holt = false;
};

struct SmoothingSection {
    double step = 0.001;
    double coarse_step = 0.01;
    SmoothingErrors errors = SmoothingErrors::all_periods;
};

struct OutputSection {
    std::string dir = "out";
    std::vector<std::string> formats{"text", "json", "csv"};
    bool plots = true;
};

struct MonteCarloSection {
    std::size_t replications = 1000;
    std::size_t length = 500;
};

struct PipelineConfig {
    InputSection input;
    SplitSection split;
    TestsSection tests;
    BreaksSection breaks;
    ArimaSection arima;
    ModelsSection models;
    SmoothingSection smoothing;
    OutputSection output;
    MonteCarloSection mc;
    std::uint64_t seed = 20221213;

    void validate() const;
};

template <class F> void reflect(InputSection& s, F&& f) {
    f("path", s.path);
    f("date_column", s.date_column);
    f("rate_column", s.rate_column);
}
template <class F> void reflect(SplitSection& s, F&& f) {
    f("train_fraction", s.train_fraction);
    f("train_length", s.train_length);
}
template <class F> void reflect(TestsSection& s, F&& f) {
    f("level", s.level);
    f("adf_lag_rule", s.adf_lag_rule);
    f("adf_fixed_lag", s.adf_fixed_lag);
    f("bandwidth", s.bandwidth);
    f("runs_ties", s.runs_ties);
    f("correlogram_lags", s.correlogram_lags);
    f("ljung_box_lags", s.ljung_box_lags);
    f("arch_lags", s.arch_lags);
}
template <class F> void reflect(BreaksSection& s, F&& f) {
    f("max_breaks", s.max_breaks);
    f("trimming", s.trimming);
}
template <class F> void reflect(ArimaSection& s, F&& f) {
    f("select", s.select);
    f("p_min", s.p_min);
    f("p_max", s.p_max);
    f("q_min", s.q_min);
    f("q_max", s.q_max);
    f("d", s.d);
    f("include_constant", s.include_constant);
    f("criterion", s.criterion);
    f("scheme", s.scheme);
    f("max_iterations", s.max_iterations);
    f("fit_order", s.fit_order);
}
template <class F> void reflect(ModelOrder& s, F&& f) {
    f("p", s.p);
    f("d", s.d);
    f("q", s.q);
}
template <class F> void reflect(ModelsSection& s, F&& f) {
    f("arima", s.arima);
    f("naive", s.naive);
    f("mean", s.mean);
    f("brown", s.brown);
    f("holt", s.holt);
}
template <class F> void reflect(SmoothingSection& s, F&& f) {
    f("step", s.step);
    f("coarse_step", s.coarse_step);
    f("errors", s.errors);
}
template <class F> void reflect(OutputSection& s, F&& f) {
    f("dir", s.dir);
    f("formats", s.formats);
    f("plots", s.plots);
}
template <class F> void reflect(MonteCarloSection& s, F&& f) {
    f("replications", s.replications);
    f("length", s.length);
}
template <class F> void reflect(PipelineConfig& s, F&& f) {
    f("input", s.input);
    f("split", s.split);
    f("tests", s.tests);
    f("breaks", s.breaks);
    f("arima", s.arima);
    f("models", s.models);
    f("smoothing", s.smoothing);
    f("output", s.output);
    f("mc", s.mc);
    f("seed", s.seed);
}

inline const std::vector<std::string>& known_formats() {
    static const std::vector<std::string> f{"text", "json", "csv"};
    return f;
}

inline void check_format(const std::string& token) {
    for (const auto& k : known_formats())
        if (k == token) return;
    throw InvalidArgument("unknown format '" + token + "' (expected text|json|csv)");
}

inline void PipelineConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw InvalidArgument("config: " + msg);
    };
    require(!input.path.empty(), "input.path is empty");
    require(!input.date_column.empty() && !input.rate_column.empty(), "column names must be non-empty");
    require(split.train_fraction > 0.0 && split.train_fraction < 1.0, "split.train_fraction must lie in (0, 1)");
    require(!split.train_length || *split.train_length >= 1, "split.train_length must be positive");
    require(tests.level > 0.0 && tests.level < 1.0, "tests.level must lie in (0, 1)");
    require(tests.correlogram_lags >= 1, "tests.correlogram_lags must be positive");
    require(tests.ljung_box_lags >= 1, "tests.ljung_box_lags must be positive");
    require(tests.arch_lags >= 1, "tests.arch_lags must be positive");
    require(tests.adf_fixed_lag >= 0, "tests.adf_fixed_lag must be non-negative");
    require(breaks.max_breaks >= 1, "breaks.max_breaks must be positive");
    require(breaks.trimming > 0.0 && breaks.trimming < 0.5, "breaks.trimming must lie in (0, 0.5)");
    require(arima.p_min >= 0 && arima.p_min <= arima.p_max, "arima p range is empty");
    require(arima.q_min >= 0 && arima.q_min <= arima.q_max, "arima q range is empty");
    require(arima.d >= 0, "arima.d must be non-negative");
    require(arima.max_iterations > 0, "arima.max_iterations must be positive");
    if (arima.fit_order)
        require(arima.fit_order->p >= 0 && arima.fit_order->d >= 0 && arima.fit_order->q >= 0,
                "arima.fit_order must be non-negative");
    for (const auto& m : models.arima) {
        require(m.p >= 0 && m.d >= 0 && m.q >= 0, "model orders must be non-negative");
        require(m.p + m.q >= 1 || arima.include_constant, "a model needs an ARMA term or a constant");
    }
    require(smoothing.step > 0.0 && smoothing.step <= 0.5, "smoothing.step must lie in (0, 0.5]");
    require(smoothing.coarse_step >= smoothing.step, "smoothing.coarse_step must be at least smoothing.step");
    for (const auto& f : output.formats) check_format(f);
    require(mc.replications >= 1 && mc.length >= 50, "mc needs at least one replication of length 50");
}

inline json config_to_json(const PipelineConfig& c) { return io::encode(c); }

/// Starts from the defaults and overlays the keys present in `j`. Unknown keys are errors.
inline PipelineConfig config_from_json(const json& j) {
    PipelineConfig c;
    io::decode(j, c);
    c.validate();
    return c;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace fxcast::app
