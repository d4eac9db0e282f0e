#pragma once

#include <fxcast/app/enum_names.hpp>
#include <fxcast/app/json_io.hpp>
#include <fxcast/descriptive.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fxcast {

// Field lists for library result types. They live next to the types' namespace so that
// unqualified calls from the serializer find them.

template <class F> void reflect(DescriptiveStats& s, F&& f) {
    f("mean", s.mean);
    f("median", s.median);
    f("mode", s.mode);
    f("max", s.max);
    f("min", s.min);
    f("std_dev", s.std_dev);
    f("skewness", s.skewness);
    f("kurtosis", s.kurtosis);
    f("jb_stat", s.jb_stat);
    f("jb_prob", s.jb_prob);
}
template <class F> void reflect(FrequencyReport& s, F&& f) {
    f("count_zero", s.count_zero);
    f("count_negative", s.count_negative);
    f("count_positive", s.count_positive);
    f("percent_zero", s.percent_zero);
    f("percent_negative", s.percent_negative);
    f("percent_positive", s.percent_positive);
    f("max_consecutive_negative_days", s.max_consecutive_negative_days);
    f("max_consecutive_positive_days", s.max_consecutive_positive_days);
    f("max_days_increasing", s.max_days_increasing);
    f("max_days_decreasing", s.max_days_decreasing);
}
template <class F> void reflect(RunsResult& s, F&& f) {
    f("threshold_kind", s.threshold_kind);
    f("threshold", s.threshold);
    f("n_above", s.n_above);
    f("n_below", s.n_below);
    f("observed_runs", s.observed_runs);
    f("expected_runs", s.expected_runs);
    f("std_dev", s.std_dev);
    f("z_stat", s.z_stat);
    f("p_value", s.p_value);
}
template <class F> void reflect(TestSpec& s, F&& f) {
    f("deterministic", s.deterministic);
    f("lags", s.lags);
    f("bandwidth", s.bandwidth);
}
template <class F> void reflect(TestResult& s, F&& f) {
    f("statistic", s.statistic);
    f("critical_value", s.critical_value);
    f("p_value", s.p_value);
    f("p_value_approximate", s.p_value_approximate);
    f("reject_null", s.reject_null);
    f("tail", s.tail);
    f("spec", s.spec);
    f("alt_statistic", s.alt_statistic);
    f("alt_p_value", s.alt_p_value);
}
template <class F> void reflect(BreakTestRow& s, F&& f) {
    f("breaks_under_null", s.breaks_under_null);
    f("f_stat", s.f_stat);
    f("scaled_f_stat", s.scaled_f_stat);
    f("critical_value", s.critical_value);
    f("reject", s.reject);
    f("candidate_index", s.candidate_index);
}
template <class F> void reflect(BreakResult& s, F&& f) {
    f("tests", s.tests);
    f("selected_break_count", s.selected_break_count);
    f("break_indices", s.break_indices);
    f("min_segment", s.min_segment);
}
template <class F> void reflect(LjungBoxRow& s, F&& f) {
    f("lag", s.lag);
    f("q_stat", s.q_stat);
    f("p_value", s.p_value);
    f("dof", s.dof);
}
template <class F> void reflect(CorrelogramRow& s, F&& f) {
    f("lag", s.lag);
    f("acf", s.acf);
    f("pacf", s.pacf);
    f("band", s.band);
}
template <class F> void reflect(ArimaSpec& s, F&& f) {
    f("p", s.p);
    f("d", s.d);
    f("q", s.q);
    f("include_constant", s.include_constant);
}
template <class F> void reflect(Coefficient& s, F&& f) {
    f("name", s.name);
    f("value", s.value);
    f("std_error", s.std_error);
    f("t_stat", s.t_stat);
    f("p_value", s.p_value);
}
template <class F> void reflect(EvaluationRow& s, F&& f) {
    f("model_id", s.model_id);
    f("rmse", s.rmse);
    f("mae", s.mae);
    f("smape", s.smape);
    f("smape_skipped", s.smape_skipped);
}
template <class F> void reflect(Leaderboard& s, F&& f) {
    f("rows", s.rows);
    f("best_per_criterion", s.best_per_criterion);
}
template <class F> void reflect(NamedForecast& s, F&& f) {
    f("model_id", s.model_id);
    f("values", s.values);
}

namespace app {

struct SampleBlock {
    std::string first_date;
    std::string last_date;
    std::size_t n_prices = 0;
    std::size_t n_returns = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    /// Train length that floor(fraction * N) would give, recorded even when overridden.
    std::size_t fraction_train_length = 0;
};

struct DescriptiveBlock {  // Table 1
    std::size_t n = 0;
    DescriptiveStats stats;
};

struct FrequencyBlock {  // Table 2
    FrequencyReport report;
    double leverage_correlation = 0.0;
};

struct UnitRootRow {  // Tables 4 and 5
    std::string test;  // ADF, PP, KPSS
    TestResult result;
};

struct BreaksBlock {  // Table 6
    std::size_t max_breaks = 0;
    double trimming = 0.0;
    BreakResult result;
};

struct CriterionPick {
    Criterion criterion = Criterion::bic;
    double value = 0.0;
    ArimaSpec spec;
};

struct GridCell {
    ArimaSpec spec;
    double log_likelihood = 0.0;
    double aic = 0.0, bic = 0.0, hq = 0.0;
    bool boundary = false;
};

struct SelectionBlock {  // Table 7
    Criterion criterion = Criterion::bic;
    int p_min = 0, p_max = 0, q_min = 0, q_max = 0, d = 0;
    std::vector<CriterionPick> picks;  // best model under each criterion
    std::vector<GridCell> grid;        // ranked by `criterion`
    std::vector<std::string> warnings;
};

struct FitBlock {  // Table 8
    ArimaSpec spec;
    std::vector<Coefficient> coefficients;
    double sigma2 = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0, bic = 0.0, hq = 0.0;
    double r_squared = 0.0, adj_r_squared = 0.0, f_stat = 0.0, f_prob = 0.0;
    std::size_t n_obs = 0;
    bool boundary = false;
    double min_ar_root = 0.0;
    double min_ma_root = 0.0;
    TestResult normality;
    TestResult arch;
};

struct LjungBoxBlock {  // Table 9
    std::string model;
    std::size_t fitted_params = 0;
    std::vector<LjungBoxRow> rows;
};

struct SmoothingRow {  // Table 10
    SmoothingKind kind = SmoothingKind::brown;
    double alpha = 0.0;
    std::optional<double> beta;
    double ssr = 0.0;
    double rmse = 0.0;
    std::size_t error_count = 0;
    bool alpha_identified = true;
    double final_level = 0.0;
    double final_trend = 0.0;
};

struct SmoothingBlock {
    std::size_t n = 0;
    SmoothingErrors errors = SmoothingErrors::all_periods;
    std::vector<SmoothingRow> rows;
};

struct ForecastBlock {  // Table 11
    ForecastScheme scheme = ForecastScheme::static_multi_step;
    std::vector<std::string> test_dates;
    std::vector<double> actual;
    std::vector<NamedForecast> forecasts;
    Leaderboard leaderboard;
};

struct ReturnsFigure {  // Figure 1
    std::vector<std::string> dates;
    std::vector<double> values;
};

struct CorrelogramFigure {  // Figure 2
    std::string variable;
    std::size_t n = 0;
    std::vector<CorrelogramRow> rows;
};

struct Provenance {
    std::string tool_version;
    std::string input_path;
    std::string snapshot_hash;  // FNV-1a 64 of the input bytes
    std::string config_hash;    // FNV-1a 64 of the canonical config JSON
    std::string generated_at;   // excluded from determinism comparisons
};

struct PipelineReport {
    Provenance provenance;
    SampleBlock sample;
    std::optional<DescriptiveBlock> table1;
    std::optional<FrequencyBlock> table2;
    std::optional<std::vector<RunsResult>> table3;
    std::optional<std::vector<UnitRootRow>> table4;
    std::optional<std::vector<UnitRootRow>> table5;
    std::optional<BreaksBlock> table6;
    std::optional<SelectionBlock> table7;
    std::optional<FitBlock> table8;
    std::optional<LjungBoxBlock> table9;
    std::optional<SmoothingBlock> table10;
    std::optional<ForecastBlock> table11;
    std::optional<ReturnsFigure> figure1;
    std::optional<CorrelogramFigure> figure2;
    /// Block name -> reason, for every block left empty.
    std::map<std::string, std::string> skipped;
};

template <class F> void reflect(SampleBlock& s, F&& f) {
    f("first_date", s.first_date);
    f("last_date", s.last_date);
    f("n_prices", s.n_prices);
    f("n_returns", s.n_returns);
    f("n_train", s.n_train);
    f("n_test", s.n_test);
    f("fraction_train_length", s.fraction_train_length);
}
template <class F> void reflect(DescriptiveBlock& s, F&& f) {
    f("n", s.n);
    f("stats", s.stats);
}
template <class F> void reflect(FrequencyBlock& s, F&& f) {
    f("report", s.report);
    f("leverage_correlation", s.leverage_correlation);
}
template <class F> void reflect(UnitRootRow& s, F&& f) {
    f("test", s.test);
    f("result", s.result);
}
template <class F> void reflect(BreaksBlock& s, F&& f) {
    f("max_breaks", s.max_breaks);
    f("trimming", s.trimming);
    f("result", s.result);
}
template <class F> void reflect(CriterionPick& s, F&& f) {
    f("criterion", s.criterion);
    f("value", s.value);
    f("spec", s.spec);
}
template <class F> void reflect(GridCell& s, F&& f) {
    f("spec", s.spec);
    f("log_likelihood", s.log_likelihood);
    f("aic", s.aic);
    f("bic", s.bic);
    f("hq", s.hq);
    f("boundary", s.boundary);
}
template <class F> void reflect(SelectionBlock& s, F&& f) {
    f("criterion", s.criterion);
    f("p_min", s.p_min);
    f("p_max", s.p_max);
    f("q_min", s.q_min);
    f("q_max", s.q_max);
    f("d", s.d);
    f("picks", s.picks);
    f("grid", s.grid);
    f("warnings", s.warnings);
}
template <class F> void reflect(FitBlock& s, F&& f) {
    f("spec", s.spec);
    f("coefficients", s.coefficients);
    f("sigma2", s.sigma2);
    f("log_likelihood", s.log_likelihood);
    f("aic", s.aic);
    f("bic", s.bic);
    f("hq", s.hq);
    f("r_squared", s.r_squared);
    f("adj_r_squared", s.adj_r_squared);
    f("f_stat", s.f_stat);
    f("f_prob", s.f_prob);
    f("n_obs", s.n_obs);
    f("boundary", s.boundary);
    f("min_ar_root", s.min_ar_root);
    f("min_ma_root", s.min_ma_root);
    f("normality", s.normality);
    f("arch", s.arch);
}
template <class F> void reflect(LjungBoxBlock& s, F&& f) {
    f("model", s.model);
    f("fitted_params", s.fitted_params);
    f("rows", s.rows);
}
template <class F> void reflect(SmoothingRow& s, F&& f) {
    f("kind", s.kind);
    f("alpha", s.alpha);
    f("beta", s.beta);
    f("ssr", s.ssr);
    f("rmse", s.rmse);
    f("error_count", s.error_count);
    f("alpha_identified", s.alpha_identified);
    f("final_level", s.final_level);
    f("final_trend", s.final_trend);
}
template <class F> void reflect(SmoothingBlock& s, F&& f) {
    f("n", s.n);
    f("errors", s.errors);
    f("rows", s.rows);
}
template <class F> void reflect(ForecastBlock& s, F&& f) {
    f("scheme", s.scheme);
    f("test_dates", s.test_dates);
    f("actual", s.actual);
    f("forecasts", s.forecasts);
    f("leaderboard", s.leaderboard);
}
template <class F> void reflect(ReturnsFigure& s, F&& f) {
    f("dates", s.dates);
    f("values", s.values);
}
template <class F> void reflect(CorrelogramFigure& s, F&& f) {
    f("variable", s.variable);
    f("n", s.n);
    f("rows", s.rows);
}
template <class F> void reflect(Provenance& s, F&& f) {
    f("tool_version", s.tool_version);
    f("input_path", s.input_path);
    f("snapshot_hash", s.snapshot_hash);
    f("config_hash", s.config_hash);
    f("generated_at", s.generated_at);
}
template <class F> void reflect(PipelineReport& s, F&& f) {
    f("provenance", s.provenance);
    f("sample", s.sample);
    f("table1", s.table1);
    f("table2", s.table2);
    f("table3", s.table3);
    f("table4", s.table4);
    f("table5", s.table5);
    f("table6", s.table6);
    f("table7", s.table7);
    f("table8", s.table8);
    f("table9", s.table9);
    f("table10", s.table10);
    f("table11", s.table11);
    f("figure1", s.figure1);
    f("figure2", s.figure2);
    f("skipped", s.skipped);
}

/// Names of the report blocks that correspond to published tables and figures, in order.
inline const std::vector<std::string>& block_names() {
    static const std::vector<std::string> names{"table1", "table2", "table3", "table4",  "table5",  "table6", "table7",
                                                "table8", "table9", "table10", "table11", "figure1", "figure2"};
    return names;
}

/// True when `name` is either filled in or listed in `skipped`.
inline bool block_accounted(const PipelineReport& r, const std::string& name) {
    if (r.skipped.count(name)) return true;
    const json j = io::encode(r);
    return j.contains(name) && !j.at(name).is_null();
}

inline json report_to_json(const PipelineReport& r) { return io::encode(r); }

inline PipelineReport report_from_json(const json& j) {
    PipelineReport r;
    io::decode(j, r);
    return r;
}

}  // namespace app
}  // namespace fxcast
