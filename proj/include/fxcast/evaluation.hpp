#pragma once

#include <fxcast/error.hpp>

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fxcast {

namespace detail {

inline void check_pair(std::span<const double> forecast, std::span<const double> actual) {
    if (forecast.size() != actual.size()) throw InvalidArgument("forecast and actual differ in length");
    if (forecast.empty()) throw InvalidArgument("cannot score empty vectors");
}

}  // namespace detail

inline double rmse(std::span<const double> forecast, std::span<const double> actual) {
    detail::check_pair(forecast, actual);
    double s = 0.0;
    for (std::size_t i = 0; i < forecast.size(); ++i) s += (forecast[i] - actual[i]) * (forecast[i] - actual[i]);
    return std::sqrt(s / static_cast<double>(forecast.size()));
}

inline double mae(std::span<const double> forecast, std::span<const double> actual) {
    detail::check_pair(forecast, actual);
    double s = 0.0;
    for (std::size_t i = 0; i < forecast.size(); ++i) s += std::abs(forecast[i] - actual[i]);
    return s / static_cast<double>(forecast.size());
}

/// Pairs with |f| + |a| below this are left out of SMAPE.
inline constexpr double kSmapeZeroTolerance = 1e-12;

struct SmapeResult {
    double value = 0.0;
    std::size_t skipped = 0;
};

/// 200 * mean |f - a| / (|f| + |a|) over the pairs where the denominator is non-zero.
inline SmapeResult smape_detailed(std::span<const double> forecast, std::span<const double> actual) {
    detail::check_pair(forecast, actual);
    double s = 0.0;
    std::size_t used = 0;
    SmapeResult r;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        const double den = std::abs(forecast[i]) + std::abs(actual[i]);
        if (den < kSmapeZeroTolerance) {
            ++r.skipped;
            continue;
        }
        s += std::abs(forecast[i] - actual[i]) / den;
        ++used;
    }
    if (used == 0) throw InvalidArgument("SMAPE undefined: every pair is zero");
    r.value = 200.0 * s / static_cast<double>(used);
    return r;
}

inline double smape(std::span<const double> forecast, std::span<const double> actual) {
    return smape_detailed(forecast, actual).value;
}

struct EvaluationRow {
    std::string model_id;
    double rmse = 0.0;
    double mae = 0.0;
    double smape = 0.0;
    std::size_t smape_skipped = 0;
};

enum class Metric { rmse, mae, smape };

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::rmse: return "RMSE";
        case Metric::mae: return "MAE";
        case Metric::smape: return "SMAPE";
    }
    return "?";
}

struct NamedForecast {
    std::string model_id;
    std::vector<double> values;
};

struct Leaderboard {
    std::vector<EvaluationRow> rows;
    std::map<Metric, std::string> best_per_criterion;

    bool is_best(const std::string& model, Metric m) const {
        const auto it = best_per_criterion.find(m);
        return it != best_per_criterion.end() && it->second == model;
    }
};

inline double metric_of(const EvaluationRow& r, Metric m) {
    return m == Metric::rmse ? r.rmse : m == Metric::mae ? r.mae : r.smape;
}

/// Scores every model against `actual`; the best mark per metric goes to the lowest value,
/// the earliest model on ties.
inline Leaderboard evaluate(std::span<const NamedForecast> forecasts, std::span<const double> actual) {
    if (forecasts.empty()) throw InvalidArgument("evaluation needs at least one model");
    Leaderboard board;
    for (const auto& f : forecasts) {
        if (f.values.size() != actual.size()) throw InvalidArgument("forecast '" + f.model_id + "' has the wrong length");
        const auto s = smape_detailed(f.values, actual);
        board.rows.push_back({f.model_id, rmse(f.values, actual), mae(f.values, actual), s.value, s.skipped});
    }
    for (Metric m : {Metric::rmse, Metric::mae, Metric::smape}) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < board.rows.size(); ++i)
            if (metric_of(board.rows[i], m) < metric_of(board.rows[best], m)) best = i;
        board.best_per_criterion[m] = board.rows[best].model_id;
    }
    return board;
}

}  // namespace fxcast
