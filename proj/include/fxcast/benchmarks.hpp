#pragma once

#include <fxcast/error.hpp>

#include <span>
#include <vector>

namespace fxcast {

/// Random-walk forecast: every step repeats the last observation.
inline std::vector<double> naive_forecast(std::span<const double> y, std::size_t horizon) {
    if (y.empty()) throw DataError("naive forecast of an empty series");
    if (horizon < 1) throw InvalidArgument("forecast horizon must be at least 1");
    return std::vector<double>(horizon, y.back());
}

/// Mean index: every step is the sample mean of `y` (pass the train segment only).
inline std::vector<double> mean_forecast(std::span<const double> y, std::size_t horizon) {
    if (y.empty()) throw DataError("mean forecast of an empty series");
    if (horizon < 1) throw InvalidArgument("forecast horizon must be at least 1");
    double s = 0.0;
    for (double v : y) s += v;
    return std::vector<double>(horizon, s / static_cast<double>(y.size()));
}

}  // namespace fxcast
