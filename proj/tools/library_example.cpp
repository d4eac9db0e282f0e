// Minimal use of the library without the pipeline: load a CSV, fit two models
// on a train segment and score their forecasts on the rest.
#include <fxcast/app/ingest.hpp>
#include <fxcast/arima.hpp>
#include <fxcast/benchmarks.hpp>
#include <fxcast/evaluation.hpp>
#include <fxcast/smoothing.hpp>

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
    const char* path = argc > 1 ? argv[1] : FXCAST_DATA_DIR "/usdtry_2022.csv";
    try {
        const auto returns = fxcast::compute_returns(fxcast::app::ingest_csv(path));
        const auto [train, test] = fxcast::split(returns, {0.85});

        const auto arima = fxcast::fit_arima(train.values(), {1, 1, 1, true});
        const auto brown = fxcast::fit_brown(train.values());

        std::vector<fxcast::NamedForecast> models;
        models.push_back({arima.spec().label(), fxcast::forecast(arima.model, train.values(), test.size())});
        models.push_back({"Brown", fxcast::smoothing_forecast(brown, test.size())});
        models.push_back({"Random Walk", fxcast::naive_forecast(train.values(), test.size())});
        const auto board = fxcast::evaluate(models, test.values());
        std::printf("%-14s %8s %8s %9s\n", "model", "RMSE", "MAE", "SMAPE");
        for (const auto& r : board.rows) std::printf("%-14s %8.4f %8.4f %9.3f\n", r.model_id.c_str(), r.rmse, r.mae, r.smape);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
