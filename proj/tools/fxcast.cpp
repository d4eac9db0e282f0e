#include <fxcast/app/config.hpp>
#include <fxcast/app/pipeline.hpp>
#include <fxcast/app/plot_data.hpp>
#include <fxcast/app/render.hpp>
#include <fxcast/montecarlo.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fxcast;
using namespace fxcast::app;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct Overrides {
    std::string config_path;
    std::string input;
    std::string criterion;
    std::string scheme;
    std::string format;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<int> order;
    std::vector<std::string> suites;
    std::optional<std::size_t> replications;
    bool all_suites = false;
};

PipelineConfig build_config(const Overrides& o) {
    PipelineConfig cfg = o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
    if (!o.input.empty()) cfg.input.path = o.input;
    if (!o.criterion.empty()) cfg.arima.criterion = parse_enum<Criterion>(o.criterion, "criterion");
    if (!o.scheme.empty()) cfg.arima.scheme = parse_enum<ForecastScheme>(o.scheme, "scheme");
    if (!o.out_dir.empty()) cfg.output.dir = o.out_dir;
    if (o.seed) cfg.seed = *o.seed;
    if (!o.order.empty()) {
        if (o.order.size() != 3) throw InvalidArgument("--order expects p,d,q");
        cfg.arima.fit_order = ModelOrder{o.order[0], o.order[1], o.order[2]};
    }
    if (o.replications) cfg.mc.replications = *o.replications;
    cfg.validate();
    return cfg;
}

ReportFormat stdout_format(const Overrides& o) { return o.format.empty() ? ReportFormat::text : parse_format(o.format); }

int cmd_ingest(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto data = prepare_data(cfg);
    json j;
    j["path"] = cfg.input.path;
    j["rows"] = data.prices.size();
    j["first_date"] = to_iso_string(data.prices.dates().front());
    j["last_date"] = to_iso_string(data.prices.dates().back());
    j["returns"] = data.returns.size();
    j["train"] = data.split.train.size();
    j["test"] = data.split.test.size();
    j["train_by_fraction"] = data.fraction_train_length;
    j["fnv1a"] = hex64(fnv1a(data.raw_bytes));
    switch (stdout_format(o)) {
        case ReportFormat::json: std::cout << j.dump(2) << '\n'; break;
        case ReportFormat::csv:
            std::cout << "path,rows,first_date,last_date,returns,train,test,fnv1a\n"
                      << cfg.input.path << ',' << data.prices.size() << ',' << j["first_date"].get<std::string>() << ','
                      << j["last_date"].get<std::string>() << ',' << data.returns.size() << ','
                      << data.split.train.size() << ',' << data.split.test.size() << ','
                      << j["fnv1a"].get<std::string>() << '\n';
            break;
        case ReportFormat::text:
            std::cout << cfg.input.path << ": " << data.prices.size() << " rows, " << j["first_date"].get<std::string>()
                      << " .. " << j["last_date"].get<std::string>() << ", " << data.returns.size() << " returns (train "
                      << data.split.train.size() << ", test " << data.split.test.size() << "), fnv1a "
                      << j["fnv1a"].get<std::string>() << '\n';
            break;
    }
    return kExitOk;
}

/// Runs a subset of the pipeline and prints it in the requested format.
int cmd_partial(const Overrides& o, unsigned stages) {
    const auto cfg = build_config(o);
    const auto report = run_pipeline(cfg, stages);
    std::cout << render_report(report, stdout_format(o));
    return kExitOk;
}

int cmd_forecast(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto report = run_pipeline(cfg, stage_forecast);
    const auto& fb = *report.table11;
    switch (stdout_format(o)) {
        case ReportFormat::json: std::cout << io::encode(fb).dump(2) << '\n'; break;
        default: std::cout << render_forecasts_csv(fb); break;
    }
    return kExitOk;
}

int cmd_report(const Overrides& o) {
    const auto cfg = build_config(o);
    const auto report = run_pipeline(cfg);
    const std::filesystem::path dir = cfg.output.dir;
    ensure_directory(dir);
    for (const auto& f : cfg.output.formats) {
        const auto fmt = parse_format(f);
        const std::string stem = fmt == ReportFormat::csv ? "leaderboard" : "report";
        write_text_file(dir / (stem + "." + file_extension(fmt)), render_report(report, fmt));
    }
    write_text_file(dir / "forecasts.csv", render_forecasts_csv(*report.table11));
    if (cfg.output.plots) emit_plot_data(report, dir);
    std::cout << render_report(report, stdout_format(o));
    return kExitOk;
}

int cmd_mc(const Overrides& o) {
    const auto cfg = build_config(o);
    mc::Settings s;
    s.seed = cfg.seed;
    s.replications = cfg.mc.replications;
    s.length = cfg.mc.length;
    std::vector<const mc::Suite*> chosen;
    if (!o.suites.empty()) {
        for (const auto& name : o.suites) chosen.push_back(&mc::find_suite(name));
    } else {
        for (const auto& suite : mc::suites())
            if (suite.in_default_set || o.all_suites) chosen.push_back(&suite);
    }
    const bool as_json = stdout_format(o) == ReportFormat::json;
    json out = json::array();
    bool all_passed = true;
    for (const auto* suite : chosen) {
        const auto r = suite->run(s);
        all_passed = all_passed && r.passed();
        if (as_json) {
            out.push_back({{"suite", r.name},
                           {"measure", r.measure},
                           {"value", r.value},
                           {"lower", r.lower},
                           {"upper", r.upper},
                           {"replications", r.replications},
                           {"failures", r.failures},
                           {"seconds", r.seconds},
                           {"passed", r.passed()}});
        } else {
            std::printf("%-20s %s  %.4f in [%.2f, %.2f]  (%s; %zu reps, %zu errors, %.1f s)\n", r.name.c_str(),
                        r.passed() ? "PASS" : "FAIL", r.value, r.lower, r.upper, r.measure.c_str(), r.replications,
                        r.failures, r.seconds);
            std::fflush(stdout);
        }
    }
    if (as_json) std::cout << out.dump(2) << '\n';
    return all_passed ? kExitOk : kExitSuiteFailed;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return kExitConfig;
        case ErrorKind::data: return kExitData;
        case ErrorKind::numerical: return kExitNumerical;
    }
    return kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exchange-rate returns: diagnostics, ARIMA and smoothing fits, forecast evaluation"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    app.add_option("--config", o.config_path, "JSON configuration file");
    app.add_option("--input", o.input, "CSV file with a header row");
    app.add_option("--criterion", o.criterion, "Model selection criterion: aic|bic|hq");
    app.add_option("--scheme", o.scheme, "ARIMA forecast scheme: static|rolling");
    app.add_option("--format", o.format, "Output format for stdout: text|json|csv");
    app.add_option("--out-dir", o.out_dir, "Directory for report and plot files");
    app.add_option("--seed", o.seed, "Master seed for Monte Carlo suites");

    std::function<int()> action;
    auto add = [&](const char* name, const char* help, std::function<int()> fn) {
        auto* sub = app.add_subcommand(name, help);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };
    add("ingest", "Load and validate the input file", [&] { return cmd_ingest(o); });
    add("describe", "Descriptive statistics, frequency counts, runs tests", [&] { return cmd_partial(o, stage_describe); });
    add("test", "Unit-root, stationarity and structural-break tests", [&] { return cmd_partial(o, stage_tests); });
    add("select", "Correlogram and information-criterion model selection", [&] { return cmd_partial(o, stage_select); });
    auto* fit = add("fit", "Estimate an ARIMA model with residual diagnostics", [&] { return cmd_partial(o, stage_fit); });
    fit->add_option("--order", o.order, "Model order p,d,q (default: selection winner)")->delimiter(',')->expected(3);
    add("forecast", "Test-window forecasts of every enabled model", [&] { return cmd_forecast(o); });
    add("evaluate", "Forecast accuracy leaderboard", [&] { return cmd_partial(o, stage_smoothing | stage_forecast); });
    add("report", "Full pipeline; writes report, leaderboard and plot files", [&] { return cmd_report(o); });
    auto* mc = add("mc", "Monte Carlo verification suites", [&] { return cmd_mc(o); });
    mc->add_option("--suite", o.suites, "Suite name (repeatable); default: the standard set");
    mc->add_option("--replications", o.replications, "Replications for the size and power suites");
    mc->add_flag("--all", o.all_suites, "Include the extended suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    try {
        return action();
    } catch (const fxcast::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
