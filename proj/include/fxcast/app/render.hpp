#pragma once

#include <fxcast/app/config.hpp>
#include <fxcast/app/report.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

namespace fxcast::app {

enum class ReportFormat { text, json, csv };

inline ReportFormat parse_format(const std::string& token) {
    if (token == "text") return ReportFormat::text;
    if (token == "json") return ReportFormat::json;
    if (token == "csv") return ReportFormat::csv;
    throw InvalidArgument("unknown format '" + token + "' (expected text|json|csv)");
}

inline const char* file_extension(ReportFormat f) {
    switch (f) {
        case ReportFormat::text: return "txt";
        case ReportFormat::json: return "json";
        case ReportFormat::csv: return "csv";
    }
    return "out";
}

namespace detail {

inline std::string fixed(double v, int digits = 3) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    // Avoid printing "-0.000".
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

/// Shortest decimal that reads back to the same double.
inline std::string exact(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline std::string pad(std::string s, std::size_t width, bool left = false) {
    if (s.size() >= width) return s;
    const std::string fill(width - s.size(), ' ');
    return left ? s + fill : fill + s;
}

inline std::string arma_label(const ArimaSpec& s) {
    return "ARMA(" + std::to_string(s.p) + ", " + std::to_string(s.q) + ")";
}

inline std::string deterministic_label(Deterministic d) {
    switch (d) {
        case Deterministic::none: return "Pure";
        case Deterministic::constant: return "Intercept";
        case Deterministic::constant_trend: return "Intercept and Trend";
    }
    return "?";
}

inline constexpr const char* kNotRequested = "not requested";

/// Accumulates the text report. Sections for blocks the caller did not request are muted.
class TextWriter {
public:
    explicit TextWriter(const PipelineReport& r) : report_(r) {}

    void section(const std::string& block, const std::string& t) {
        const auto it = report_.skipped.find(block);
        muted_ = it != report_.skipped.end() && it->second == kNotRequested;
        if (muted_) return;
        out_ << '\n' << t << '\n' << std::string(t.size(), '=') << '\n';
    }
    void line(const std::string& s = {}) {
        if (!muted_) out_ << s << '\n';
    }
    void row(std::initializer_list<std::string> cells, std::initializer_list<std::size_t> widths) {
        if (muted_) return;
        auto w = widths.begin();
        bool first = true;
        for (const auto& c : cells) {
            const std::size_t width = w != widths.end() ? *w++ : 12;
            out_ << (first ? pad(c, width, true) : pad(c, width));
            first = false;
        }
        out_ << '\n';
    }
    void skipped(const std::string& block) {
        const auto it = report_.skipped.find(block);
        line("  (skipped: " + (it != report_.skipped.end() ? it->second : std::string("not computed")) + ")");
    }
    std::string str() const { return out_.str(); }

private:
    const PipelineReport& report_;
    std::ostringstream out_;
    bool muted_ = false;
};

}  // namespace detail

inline std::string render_text(const PipelineReport& r) {
    using detail::fixed;
    detail::TextWriter w(r);
    w.line("Exchange-rate returns forecasting report");
    w.line("input: " + r.provenance.input_path + "  (fnv1a " + r.provenance.snapshot_hash + ")");
    w.line("sample: " + r.sample.first_date + " .. " + r.sample.last_date + ", " + std::to_string(r.sample.n_prices) +
           " prices, " + std::to_string(r.sample.n_returns) + " returns, train " + std::to_string(r.sample.n_train) +
           " / test " + std::to_string(r.sample.n_test));

    w.section("table1", "Table 1  Descriptive Statistics");
    if (r.table1) {
        const auto& s = r.table1->stats;
        w.line("Variable: Returns (n = " + std::to_string(r.table1->n) + ")");
        const std::initializer_list<std::size_t> cols{14, 12};
        w.row({"Mean", fixed(s.mean)}, cols);
        w.row({"Median", fixed(s.median)}, cols);
        w.row({"Mode", fixed(s.mode)}, cols);
        w.row({"Maximum", fixed(s.max)}, cols);
        w.row({"Minimum", fixed(s.min)}, cols);
        w.row({"Std. Dev.", fixed(s.std_dev)}, cols);
        w.row({"Skewness", fixed(s.skewness)}, cols);
        w.row({"Kurtosis", fixed(s.kurtosis)}, cols);
        w.row({"J-B Stat.", fixed(s.jb_stat)}, cols);
        w.row({"J-B Prob.", fixed(s.jb_prob)}, cols);
    } else {
        w.skipped("table1");
    }

    w.section("table2", "Table 2  Frequency Discrimination");
    if (r.table2) {
        const auto& f = r.table2->report;
        const std::initializer_list<std::size_t> cols{34, 8, 10};
        w.row({"Description", "Count", "Percent"}, cols);
        w.row({"Zero returns", std::to_string(f.count_zero), fixed(f.percent_zero, 2)}, cols);
        w.row({"Negative returns", std::to_string(f.count_negative), fixed(f.percent_negative, 2)}, cols);
        w.row({"Positive returns", std::to_string(f.count_positive), fixed(f.percent_positive, 2)}, cols);
        w.row({"Total", std::to_string(f.total()), fixed(100.0, 2)}, cols);
        w.row({"Max consecutive negative days", std::to_string(f.max_consecutive_negative_days), ""}, cols);
        w.row({"Max consecutive positive days", std::to_string(f.max_consecutive_positive_days), ""}, cols);
        w.row({"Max days in an increasing trend", std::to_string(f.max_days_increasing), ""}, cols);
        w.row({"Max days in a decreasing trend", std::to_string(f.max_days_decreasing), ""}, cols);
        w.line("Leverage: Corr(R_t^2, R_{t-1}) = " + fixed(r.table2->leverage_correlation, 4));
    } else {
        w.skipped("table2");
    }

    w.section("table3", "Table 3  Runs Test Outcomes");
    if (r.table3) {
        const std::initializer_list<std::size_t> cols{10, 10, 8, 8, 8, 10, 8, 8};
        w.row({"Threshold", "Value", "n(<=)", "n(>)", "R", "E[R]", "Z", "Prob."}, cols);
        for (const auto& t : *r.table3)
            w.row({enum_token(t.threshold_kind), fixed(t.threshold), std::to_string(t.n_below), std::to_string(t.n_above),
                   std::to_string(t.observed_runs), fixed(t.expected_runs), fixed(t.z_stat), fixed(t.p_value)},
                  cols);
    } else {
        w.skipped("table3");
    }

    auto unit_root_table = [&](const std::vector<UnitRootRow>& rows) {
        std::string current;
        const std::initializer_list<std::size_t> cols{22, 12, 16, 8};
        for (const auto& row : rows) {
            if (row.test != current) {
                current = row.test;
                w.line(row.test + " Test");
                w.line(row.test == "KPSS" ? "Null: Time Series is Stationary" : "Null: There is a Unit Root.");
                w.row({"Type", row.test == "KPSS" ? "L-M Stat." : "Statistic", "Critical Value", "Prob."}, cols);
            }
            const auto& t = row.result;
            std::string p = t.p_value ? fixed(*t.p_value) : "";
            if (t.p_value && t.p_value_approximate) p += "~";
            w.row({detail::deterministic_label(t.spec.deterministic), fixed(t.statistic), fixed(t.critical_value), p},
                  cols);
        }
        w.line("Sig. Level: 5 %   (~ approximate p-value)");
    };

    w.section("table4", "Table 4  Unit Root/Stationary Tests");
    if (r.table4) unit_root_table(*r.table4);
    else w.skipped("table4");

    w.section("table5", "Table 5  Stationary Test (differenced returns)");
    if (r.table5) unit_root_table(*r.table5);
    else w.skipped("table5");

    w.section("table6", "Table 6  Structural Breaks Test");
    if (r.table6) {
        const auto& b = *r.table6;
        w.line("Bai-Perron test of L vs. L+1 sequentially determined breaks");
        w.line("Breaking variable: C (level)   Max breaks: " + std::to_string(b.max_breaks) +
               "   Trimming: " + fixed(b.trimming, 2) + "   Covariance: HAC (Bartlett)");
        const std::initializer_list<std::size_t> cols{12, 10, 16, 16};
        w.row({"Break Test", "F-Stat.", "Scaled F-Stat.", "Critical Value"}, cols);
        for (const auto& t : b.result.tests)
            w.row({t.label() + (t.reject ? " *" : ""), fixed(t.f_stat), fixed(t.scaled_f_stat), fixed(t.critical_value)},
                  cols);
        std::string idx;
        for (auto i : b.result.break_indices) idx += (idx.empty() ? "" : ", ") + std::to_string(i);
        w.line("Selected breaks: " + std::to_string(b.result.selected_break_count) +
               (idx.empty() ? "" : "  at observation(s) " + idx));
    } else {
        w.skipped("table6");
    }

    w.section("table7", "Table 7  Model Selection");
    if (r.table7) {
        const auto& s = *r.table7;
        w.line("Model: ARMA(P, Q) s.t. P in [" + std::to_string(s.p_min) + ", " + std::to_string(s.p_max) +
               "], Q in [" + std::to_string(s.q_min) + ", " + std::to_string(s.q_max) + "]");
        w.line(std::string("Variable: ") + (s.d > 0 ? "D (Returns)" : "Returns"));
        w.line("Estimating technique: maximum likelihood (normal distribution)");
        const std::initializer_list<std::size_t> cols{10, 10, 14};
        w.row({"Criterion", "Value", "Suggestion"}, cols);
        for (const auto& p : s.picks) {
            std::string name = p.criterion == Criterion::hq ? "H-Q" : p.criterion == Criterion::aic ? "AIC" : "BIC";
            w.row({name, fixed(p.value), detail::arma_label(p.spec)}, cols);
        }
        for (const auto& m : s.warnings) w.line("warning: " + m);
    } else {
        w.skipped("table7");
    }

    w.section("table8", "Table 8  Estimated ARIMA Model");
    if (r.table8) {
        const auto& f = *r.table8;
        w.line("Estimated model: " + f.spec.label() + (f.boundary ? "   [boundary solution]" : ""));
        w.line("Estimating method: maximum likelihood (normal distribution)");
        const std::initializer_list<std::size_t> cols{10, 10, 12, 10, 8};
        w.row({"Variable", "Coef.", "Std. Err.", "t-Stat.", "Prob."}, cols);
        for (const auto& c : f.coefficients)
            w.row({c.name, fixed(c.value), fixed(c.std_error), fixed(c.t_stat), fixed(c.p_value)}, cols);
        const std::initializer_list<std::size_t> two{14, 10, 10, 10};
        w.row({"R-Sq", fixed(f.r_squared), "Log L", fixed(f.log_likelihood)}, two);
        w.row({"Adj. R-Sq", fixed(f.adj_r_squared), "AIC", fixed(f.aic)}, two);
        w.row({"F-Stat.", fixed(f.f_stat), "BIC", fixed(f.bic)}, two);
        w.row({"F-Prob.", fixed(f.f_prob), "H-Q", fixed(f.hq)}, two);
        w.line("Normality test");
        w.row({"J-B Stat.", fixed(f.normality.statistic)}, two);
        w.row({"J-B Prob.", f.normality.p_value ? fixed(*f.normality.p_value) : "NA"}, two);
        w.line("Heteroscedasticity test: ARCH");
        const std::string q = std::to_string(f.arch.spec.lags);
        const std::initializer_list<std::size_t> arch{14, 10, 18, 10};
        w.row({"F-Stat.", f.arch.alt_statistic ? fixed(*f.arch.alt_statistic) : "NA", "Prob. F",
               f.arch.alt_p_value ? fixed(*f.arch.alt_p_value) : "NA"},
              arch);
        w.row({"Lagrange-Stat.", fixed(f.arch.statistic), "Prob. Chi-Sq(" + q + ")",
               f.arch.p_value ? fixed(*f.arch.p_value) : "NA"},
              arch);
    } else {
        w.skipped("table8");
    }

    w.section("table9", "Table 9  Ljung-Box Test");
    if (r.table9) {
        w.line("Variable: " + r.table9->model + " residuals");
        w.line("Null: There is no serial correlation.");
        const std::initializer_list<std::size_t> cols{6, 10, 8};
        w.row({"Lag", "Q-Stat.", "Prob."}, cols);
        for (const auto& row : r.table9->rows)
            w.row({std::to_string(row.lag), fixed(row.q_stat), fixed(row.p_value)}, cols);
    } else {
        w.skipped("table9");
    }

    w.section("table10", "Table 10  Exponential Smoothing Estimation");
    if (r.table10) {
        w.line("Variable: Returns   No. of observations: " + std::to_string(r.table10->n));
        const std::initializer_list<std::size_t> cols{8, 12, 10, 16, 8};
        w.row({"Model", "Alpha", "Beta", "Sum Sq-Resid.", "RMSE"}, cols);
        for (const auto& s : r.table10->rows)
            w.row({s.kind == SmoothingKind::holt ? "Holt" : "Brown",
                   fixed(s.alpha, 3) + (s.alpha_identified ? "" : " (n.i.)"), s.beta ? fixed(*s.beta) : "--",
                   fixed(s.ssr), fixed(s.rmse)},
                  cols);
        w.line("(n.i.: alpha not identified because the trend weight is zero)");
    } else {
        w.skipped("table10");
    }

    w.section("table11", "Table 11  Forecasting Evaluation");
    if (r.table11) {
        const auto& lb = r.table11->leaderboard;
        const std::initializer_list<std::size_t> cols{20, 10, 10, 12};
        w.row({"Model", "RMSE", "MAE", "SMAPE"}, cols);
        auto cell = [&](const EvaluationRow& row, Metric m) {
            return fixed(metric_of(row, m)) + (lb.is_best(row.model_id, m) ? "*" : " ");
        };
        for (const auto& row : lb.rows)
            w.row({row.model_id, cell(row, Metric::rmse), cell(row, Metric::mae), cell(row, Metric::smape)}, cols);
        w.line("The * indicates the best model. Horizon: " + std::to_string(r.table11->actual.size()) +
               " observations, scheme: " + enum_token(r.table11->scheme) + ".");
    } else {
        w.skipped("table11");
    }
    return w.str();
}

/// The leaderboard as CSV: one header row, one row per model.
inline std::string render_leaderboard_csv(const Leaderboard& lb) {
    std::ostringstream out;
    out << "model,rmse,mae,smape,smape_skipped,best_rmse,best_mae,best_smape\n";
    for (const auto& row : lb.rows) {
        std::string id = row.model_id;
        if (id.find_first_of(",\"") != std::string::npos) {
            std::string q = "\"";
            for (char c : id) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            id = q + "\"";
        }
        out << id << ',' << detail::exact(row.rmse) << ',' << detail::exact(row.mae) << ',' << detail::exact(row.smape)
            << ',' << row.smape_skipped << ',' << lb.is_best(row.model_id, Metric::rmse) << ','
            << lb.is_best(row.model_id, Metric::mae) << ',' << lb.is_best(row.model_id, Metric::smape) << '\n';
    }
    return out.str();
}

/// Test-window forecasts as CSV: date, actual, then one column per model.
inline std::string render_forecasts_csv(const ForecastBlock& fb) {
    std::ostringstream out;
    out << "date,actual";
    for (const auto& f : fb.forecasts) out << ",\"" << f.model_id << '"';
    out << '\n';
    for (std::size_t i = 0; i < fb.actual.size(); ++i) {
        out << (i < fb.test_dates.size() ? fb.test_dates[i] : std::to_string(i + 1)) << ',' << detail::exact(fb.actual[i]);
        for (const auto& f : fb.forecasts) out << ',' << detail::exact(f.values[i]);
        out << '\n';
    }
    return out.str();
}

inline std::string render_report(const PipelineReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::text: return render_text(r);
        case ReportFormat::json: return report_to_json(r).dump(2) + "\n";
        case ReportFormat::csv:
            if (!r.table11) throw InvalidArgument("csv output needs the forecasting evaluation block");
            return render_leaderboard_csv(r.table11->leaderboard);
    }
    throw InvalidArgument("unknown report format");
}

inline std::string render_report(const PipelineReport& r, const std::string& format) {
    return render_report(r, parse_format(format));
}

inline PipelineReport parse_report_json(const std::string& text) {
    try {
        return report_from_json(json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
}

}  // namespace fxcast::app
