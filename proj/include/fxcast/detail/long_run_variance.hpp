#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace fxcast::detail {

/// floor(4 (T/100)^{2/9}), the fixed Newey-West rule for the Bartlett kernel.
inline int newey_west_bandwidth(std::size_t n) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

/// Bartlett-kernel long-run variance of `u` (taken as already centered),
/// autocovariances normalized by 1/n.
inline double bartlett_lrv(std::span<const double> u, int bandwidth) {
    const std::size_t n = u.size();
    double s = 0.0;
    for (double v : u) s += v * v;
    double lrv = s / static_cast<double>(n);
    for (int j = 1; j <= bandwidth && static_cast<std::size_t>(j) < n; ++j) {
        double g = 0.0;
        for (std::size_t t = static_cast<std::size_t>(j); t < n; ++t) g += u[t] * u[t - static_cast<std::size_t>(j)];
        const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1.0);
        lrv += 2.0 * w * g / static_cast<double>(n);
    }
    return lrv;
}

}  // namespace fxcast::detail
