#pragma once

#include <fxcast/arima/kalman.hpp>
#include <fxcast/arima/model.hpp>
#include <fxcast/series.hpp>

#include <span>
#include <vector>

namespace fxcast {

enum class ForecastScheme {
    static_multi_step,  // h-step forecasts from the end of the origin series
    rolling_one_step,   // one-step forecasts, each conditioned on the realized values before it
};

namespace detail {

inline std::vector<double> binomial_row(int d) {
    std::vector<double> c(static_cast<std::size_t>(d + 1), 1.0);
    for (int i = 1; i <= d; ++i) c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i - 1)] * (d - i + 1) / i;
    return c;
}

/// y_t given the d-th difference w_t and the preceding levels:
/// y_t = w_t - sum_{i=1..d} (-1)^i C(d,i) y_{t-i}.
inline double undifference(double w, std::span<const double> history, int d) {
    const auto c = binomial_row(d);
    double y = w;
    for (int i = 1; i <= d; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        y -= sign * c[static_cast<std::size_t>(i)] * history[history.size() - static_cast<std::size_t>(i)];
    }
    return y;
}

inline ArmaStateSpace::State filtered_state(const ArmaStateSpace& ss, std::span<const double> w) {
    auto state = ss.initial_state();
    for (double x : w) ss.update(state, x);
    return state;
}

}  // namespace detail

/// Iterated conditional-expectation forecasts for h = 1..horizon, re-integrated to the
/// scale of `origin` (the undifferenced series the model was fitted on).
inline std::vector<double> forecast(const ArimaModel& model, std::span<const double> origin, std::size_t horizon) {
    if (horizon < 1) throw InvalidArgument("forecast horizon must be at least 1");
    const int d = model.spec.d;
    if (origin.size() <= static_cast<std::size_t>(d)) throw DataError("origin series too short for differencing");
    const ReturnSeries src{std::vector<double>(origin.begin(), origin.end())};
    const auto w = difference(src, static_cast<std::size_t>(d));
    const ArmaStateSpace ss(model);
    const auto state = detail::filtered_state(ss, w.values());
    const auto wf = ss.forecast(state, horizon);
    std::vector<double> history(origin.begin(), origin.end());
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        out[h] = detail::undifference(wf[h], history, d);
        history.push_back(out[h]);
    }
    return out;
}

/// One-step-ahead forecasts of each value in `actual`, updating the filter with realized values
/// (parameters stay fixed).
inline std::vector<double> rolling_forecast(const ArimaModel& model, std::span<const double> origin,
                                            std::span<const double> actual) {
    if (actual.empty()) throw InvalidArgument("forecast horizon must be at least 1");
    const int d = model.spec.d;
    if (origin.size() <= static_cast<std::size_t>(d)) throw DataError("origin series too short for differencing");
    const ReturnSeries src{std::vector<double>(origin.begin(), origin.end())};
    const auto w = difference(src, static_cast<std::size_t>(d));
    const ArmaStateSpace ss(model);
    auto state = detail::filtered_state(ss, w.values());
    std::vector<double> history(origin.begin(), origin.end());
    std::vector<double> out;
    out.reserve(actual.size());
    for (double y : actual) {
        out.push_back(detail::undifference(ss.predict(state), history, d));
        history.push_back(y);
        // realized d-th difference of the new value
        const auto c = detail::binomial_row(d);
        double wt = 0.0;
        for (int i = 0; i <= d; ++i) {
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            wt += sign * c[static_cast<std::size_t>(i)] * history[history.size() - 1 - static_cast<std::size_t>(i)];
        }
        ss.update(state, wt);
    }
    return out;
}

inline std::vector<double> forecast(const ArimaModel& model, std::span<const double> origin, std::span<const double> actual,
                                    ForecastScheme scheme) {
    return scheme == ForecastScheme::static_multi_step ? forecast(model, origin, actual.size())
                                                        : rolling_forecast(model, origin, actual);
}

}  // namespace fxcast
