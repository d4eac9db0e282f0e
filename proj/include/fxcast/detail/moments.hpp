#pragma once

#include <fxcast/error.hpp>

#include <cmath>
#include <cstddef>
#include <span>

namespace fxcast::detail {

/// Mean and population (1/n) central moments of orders 2..4.
struct CentralMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;

    double skewness() const { return m3 / std::pow(m2, 1.5); }
    double kurtosis() const { return m4 / (m2 * m2); }
    double sample_variance() const { return m2 * static_cast<double>(n) / static_cast<double>(n - 1); }
};

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline CentralMoments central_moments(std::span<const double> x) {
    CentralMoments m;
    m.n = x.size();
    if (m.n == 0) throw DataError("moments of an empty sample");
    m.mean = mean(x);
    for (double v : x) {
        const double d = v - m.mean;
        const double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
    }
    const auto n = static_cast<double>(m.n);
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    return m;
}

/// Zero-variance guard relative to the data scale.
inline bool is_degenerate(const CentralMoments& m) {
    return !(m.m2 > 1e-28 * (1.0 + m.mean * m.mean));
}

}  // namespace fxcast::detail
