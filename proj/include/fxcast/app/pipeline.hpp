#pragma once

#include <fxcast/app/config.hpp>
#include <fxcast/app/ingest.hpp>
#include <fxcast/app/report.hpp>
#include <fxcast/arima.hpp>
#include <fxcast/benchmarks.hpp>
#include <fxcast/descriptive.hpp>
#include <fxcast/evaluation.hpp>
#include <fxcast/smoothing.hpp>
#include <fxcast/stat_tests.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <numeric>
#include <string>

namespace fxcast::app {

inline constexpr const char* kToolVersion = "0.1.0";

/// Carries the failing stage's name while keeping the original error category.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& cause)
        : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

template <class Fn>
auto run_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(stage, e);
    }
}

/// The shared front half of every subcommand: prices, returns, and the train/test split.
struct PreparedData {
    PriceSeries prices;
    ReturnSeries returns;
    TrainTestSplit split;
    std::string raw_bytes;
    std::size_t fraction_train_length = 0;
};

inline PreparedData prepare_data(const PipelineConfig& cfg) {
    auto raw = run_stage("ingest", [&] { return read_file(cfg.input.path); });
    auto prices = run_stage("ingest", [&] {
        std::istringstream in(raw);
        return parse_price_csv(in, cfg.input.date_column, cfg.input.rate_column);
    });
    auto returns = run_stage("returns", [&] { return compute_returns(prices); });
    const auto n = returns.size();
    const auto by_fraction = static_cast<std::size_t>(std::floor(cfg.split.train_fraction * static_cast<double>(n)));
    auto split = run_stage("split", [&] {
        if (cfg.split.train_length) {
            if (*cfg.split.train_length >= n)
                throw InvalidArgument("split.train_length " + std::to_string(*cfg.split.train_length) +
                                      " leaves no test observations");
            return split_at(returns, *cfg.split.train_length);
        }
        return fxcast::split(returns, SplitSpec{cfg.split.train_fraction});
    });
    return {std::move(prices), std::move(returns), std::move(split), std::move(raw), by_fraction};
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::vector<std::string> iso_dates(std::span<const Date> dates) {
    std::vector<std::string> out;
    out.reserve(dates.size());
    for (const auto& d : dates) out.push_back(to_iso_string(d));
    return out;
}

inline FitOptions fit_options(const PipelineConfig& cfg) {
    FitOptions o;
    o.max_iterations = cfg.arima.max_iterations;
    return o;
}

inline SmoothingSearch smoothing_search(const PipelineConfig& cfg) {
    return {cfg.smoothing.step, cfg.smoothing.coarse_step, cfg.smoothing.errors};
}

inline SmoothingRow smoothing_row(const SmoothingFit& f) {
    SmoothingRow r;
    r.kind = f.kind;
    r.alpha = f.alpha;
    r.beta = f.beta;
    r.ssr = f.ssr;
    r.rmse = f.rmse;
    r.error_count = f.error_count;
    r.alpha_identified = f.alpha_identified;
    r.final_level = f.fitted.back();
    r.final_trend = f.trend_state.empty() ? 0.0 : f.trend_state.back();
    return r;
}

inline std::vector<UnitRootRow> unit_root_battery(std::span<const double> y, const PipelineConfig& cfg,
                                                  bool include_unit_root) {
    std::vector<UnitRootRow> rows;
    if (include_unit_root) {
        for (auto det : {Deterministic::none, Deterministic::constant_trend}) {
            AdfOptions o;
            o.deterministic = det;
            o.lag_rule = cfg.tests.adf_lag_rule;
            o.fixed_lag = cfg.tests.adf_fixed_lag;
            o.level = cfg.tests.level;
            rows.push_back({"ADF", adf_test(y, o)});
        }
        for (auto det : {Deterministic::none, Deterministic::constant_trend}) {
            PpOptions o;
            o.deterministic = det;
            o.bandwidth = cfg.tests.bandwidth;
            o.level = cfg.tests.level;
            rows.push_back({"PP", pp_test(y, o)});
        }
    }
    for (auto det : {Deterministic::constant, Deterministic::constant_trend}) {
        KpssOptions o;
        o.deterministic = det;
        o.bandwidth = cfg.tests.bandwidth;
        o.level = cfg.tests.level;
        rows.push_back({"KPSS", kpss_test(y, o)});
    }
    return rows;
}

inline FitBlock fit_block(const ArimaFit& f, const PipelineConfig& cfg) {
    FitBlock b;
    b.spec = f.spec();
    b.coefficients = f.coefficients;
    b.sigma2 = f.model.sigma2;
    b.log_likelihood = f.log_likelihood;
    b.aic = f.aic;
    b.bic = f.bic;
    b.hq = f.hq;
    b.r_squared = f.r_squared;
    b.adj_r_squared = f.adj_r_squared;
    b.f_stat = f.f_stat;
    b.f_prob = f.f_prob;
    b.n_obs = f.n_obs;
    b.boundary = f.boundary;
    b.min_ar_root = min_ar_root_modulus(f.model);
    b.min_ma_root = min_ma_root_modulus(f.model);
    b.normality = jarque_bera(f.residuals, cfg.tests.level);
    b.arch = arch_lm(f.residuals, cfg.tests.arch_lags, cfg.tests.level);
    return b;
}

/// Display name used in the leaderboard for a zoo entry.
inline std::string zoo_label(const ArimaSpec& s) { return s.label(); }

/// Groups of report blocks that a caller can ask for.
enum Stage : unsigned {
    stage_describe = 1u << 0,   // tables 1-3, figure 1
    stage_tests = 1u << 1,      // tables 4-6
    stage_select = 1u << 2,     // table 7, figure 2
    stage_fit = 1u << 3,        // tables 8-9
    stage_smoothing = 1u << 4,  // table 10
    stage_forecast = 1u << 5,   // table 11
    stage_all = (1u << 6) - 1,
};

namespace detail {

inline SelectionBlock selection_block(const SelectionResult& sel, const PipelineConfig& cfg) {
    SelectionBlock s;
    s.criterion = cfg.arima.criterion;
    s.p_min = cfg.arima.p_min;
    s.p_max = cfg.arima.p_max;
    s.q_min = cfg.arima.q_min;
    s.q_max = cfg.arima.q_max;
    s.d = cfg.arima.d;
    s.warnings = sel.warnings;
    for (auto c : {Criterion::aic, Criterion::bic, Criterion::hq}) {
        // `ranked` is already in tie-break order, so the first minimum wins.
        const SelectionEntry* best = &sel.ranked.front();
        double best_v = criterion_value(best->fit, c);
        for (const auto& e : sel.ranked) {
            const double v = criterion_value(e.fit, c);
            if (v < best_v) {
                best = &e;
                best_v = v;
            }
        }
        s.picks.push_back({c, best_v, best->spec});
    }
    for (const auto& e : sel.ranked)
        s.grid.push_back({e.spec, e.fit.log_likelihood, e.fit.aic, e.fit.bic, e.fit.hq, e.fit.boundary});
    return s;
}

inline LjungBoxBlock ljung_box_block(const ArimaFit& fit, const PipelineConfig& cfg) {
    const auto k = static_cast<std::size_t>(fit.spec().p + fit.spec().q);
    std::vector<std::size_t> lags;
    for (std::size_t h = k + 1; h <= k + cfg.tests.ljung_box_lags; ++h) lags.push_back(h);
    return {fit.spec().label(), k, ljung_box(fit.residuals, lags, k)};
}

}  // namespace detail

/// Runs the requested stages in order and assembles the report. Deterministic for a fixed config
/// and input, apart from `provenance.generated_at`. Blocks outside `stages` are listed in `skipped`.
inline PipelineReport run_pipeline(const PipelineConfig& cfg, unsigned stages = stage_all) {
    cfg.validate();
    PipelineReport rep;
    const auto data = prepare_data(cfg);
    const auto& train = data.split.train;
    const auto& test = data.split.test;
    const auto y = train.values();
    const auto wants = [&](unsigned st) { return (stages & st) != 0; };
    const auto not_requested = [&](std::initializer_list<const char*> blocks) {
        for (const char* b : blocks) rep.skipped[b] = "not requested";
    };

    rep.provenance.tool_version = kToolVersion;
    rep.provenance.input_path = cfg.input.path;
    rep.provenance.snapshot_hash = hex64(fnv1a(data.raw_bytes));
    rep.provenance.config_hash = hex64(fnv1a(config_to_json(cfg).dump()));
    rep.provenance.generated_at = utc_timestamp();

    rep.sample.first_date = to_iso_string(data.prices.dates().front());
    rep.sample.last_date = to_iso_string(data.prices.dates().back());
    rep.sample.n_prices = data.prices.size();
    rep.sample.n_returns = data.returns.size();
    rep.sample.n_train = train.size();
    rep.sample.n_test = test.size();
    rep.sample.fraction_train_length = data.fraction_train_length;

    if (wants(stage_describe)) {
        const auto all = data.returns.values();
        rep.figure1 = ReturnsFigure{iso_dates(data.returns.dates()), {all.begin(), all.end()}};
        rep.table1 = run_stage("describe", [&] { return DescriptiveBlock{y.size(), describe(y)}; });
        rep.table2 = run_stage("frequency",
                               [&] { return FrequencyBlock{frequency_discrimination(y), leverage_correlation(y)}; });
        rep.table3 = run_stage("runs", [&] {
            std::vector<RunsResult> rows;
            for (auto k : {RunsThreshold::mean, RunsThreshold::median, RunsThreshold::mode})
                rows.push_back(runs_test(y, k, cfg.tests.runs_ties));
            return rows;
        });
    } else {
        not_requested({"table1", "table2", "table3", "figure1"});
    }

    if (wants(stage_tests)) {
        rep.table4 = run_stage("unit-root", [&] { return unit_root_battery(y, cfg, true); });
        rep.table5 = run_stage("stationarity", [&] { return unit_root_battery(difference(train, 1).values(), cfg, false); });
        rep.table6 = run_stage("breaks", [&] {
            BaiPerronOptions o;
            o.max_breaks = cfg.breaks.max_breaks;
            o.trimming = cfg.breaks.trimming;
            o.bandwidth = cfg.tests.bandwidth;
            return BreaksBlock{cfg.breaks.max_breaks, cfg.breaks.trimming, bai_perron(y, o)};
        });
    } else {
        not_requested({"table4", "table5", "table6"});
    }

    if (wants(stage_select)) {
        rep.figure2 = run_stage("correlogram", [&] {
            const auto w = difference(train, static_cast<std::size_t>(cfg.arima.d));
            const std::size_t lags = std::min(cfg.tests.correlogram_lags, (w.size() - 1) / 2);
            return CorrelogramFigure{cfg.arima.d > 0 ? "D(Returns)" : "Returns", w.size(), correlogram(w.values(), lags)};
        });
    } else {
        not_requested({"figure2"});
    }

    const auto opts = fit_options(cfg);
    std::vector<SelectionEntry> grid;
    std::optional<ArimaFit> chosen;
    const bool need_grid = cfg.arima.select && (wants(stage_select) || (wants(stage_fit) && !cfg.arima.fit_order));
    if (need_grid) {
        auto sel = run_stage("selection", [&] {
            return select_arima(y, {cfg.arima.p_min, cfg.arima.p_max}, {cfg.arima.q_min, cfg.arima.q_max}, cfg.arima.d,
                                cfg.arima.criterion, cfg.arima.include_constant, opts);
        });
        if (wants(stage_select)) rep.table7 = detail::selection_block(sel, cfg);
        chosen = sel.ranked.front().fit;
        grid = std::move(sel.ranked);
    }
    if (!rep.table7) rep.skipped["table7"] = wants(stage_select) ? "model selection disabled in config" : "not requested";

    if (wants(stage_fit)) {
        if (cfg.arima.fit_order) {
            const auto spec = cfg.arima.fit_order->spec(cfg.arima.include_constant);
            chosen = run_stage("fit " + spec.label(), [&] { return fit_arima(y, spec, opts); });
        }
        if (chosen) {
            rep.table8 = run_stage("diagnostics", [&] { return fit_block(*chosen, cfg); });
            rep.table9 = run_stage("ljung-box", [&] { return detail::ljung_box_block(*chosen, cfg); });
        } else {
            for (const char* b : {"table8", "table9"}) rep.skipped[b] = "no model: selection disabled and no fit order";
        }
    } else {
        not_requested({"table8", "table9"});
    }

    const auto search = smoothing_search(cfg);
    std::optional<SmoothingFit> brown, holt;
    if (wants(stage_smoothing) || wants(stage_forecast)) {
        brown = run_stage("smoothing", [&] { return fit_brown(y, search); });
        holt = run_stage("smoothing", [&] { return fit_holt(y, search); });
    }
    if (wants(stage_smoothing))
        rep.table10 = SmoothingBlock{y.size(), cfg.smoothing.errors, {smoothing_row(*holt), smoothing_row(*brown)}};
    else
        not_requested({"table10"});

    if (!wants(stage_forecast)) {
        not_requested({"table11"});
        return rep;
    }
    rep.table11 = run_stage("forecast", [&] {
        ForecastBlock fb;
        fb.scheme = cfg.arima.scheme;
        fb.actual.assign(test.values().begin(), test.values().end());
        fb.test_dates = iso_dates(test.dates());
        const auto h = test.size();
        for (const auto& order : cfg.models.arima) {
            const auto spec = order.spec(cfg.arima.include_constant);
            const ArimaFit* reuse = nullptr;
            for (const auto& e : grid)
                if (e.spec == spec) reuse = &e.fit;
            const ArimaFit fit = reuse ? *reuse : run_stage("fit " + spec.label(), [&] { return fit_arima(y, spec, opts); });
            fb.forecasts.push_back({zoo_label(spec), forecast(fit.model, y, fb.actual, cfg.arima.scheme)});
        }
        if (cfg.models.naive) fb.forecasts.push_back({"Random Walk", naive_forecast(y, h)});
        if (cfg.models.mean) fb.forecasts.push_back({"Mean Index", mean_forecast(y, h)});
        if (cfg.models.brown) fb.forecasts.push_back({"Brown's Smoothing", smoothing_forecast(*brown, h)});
        if (cfg.models.holt) fb.forecasts.push_back({"Holt's Smoothing", smoothing_forecast(*holt, h)});
        if (fb.forecasts.empty()) throw InvalidArgument("every model is disabled in config");
        fb.leaderboard = evaluate(fb.forecasts, fb.actual);
        return fb;
    });
    return rep;
}

}  // namespace fxcast::app
