#pragma once

#include <fxcast/stat_tests/portmanteau.hpp>

#include <cmath>
#include <span>
#include <vector>

namespace fxcast {

struct CorrelogramRow {
    std::size_t lag = 0;
    double acf = 0.0;
    double pacf = 0.0;
    double band = 0.0;  // 1.96 / sqrt(n)
};

/// Partial autocorrelations from autocorrelations rho_1..rho_m (Durbin-Levinson).
inline std::vector<double> durbin_levinson_pacf(std::span<const double> rho) {
    const std::size_t m = rho.size();
    std::vector<double> pacf(m), phi(m + 1, 0.0), prev(m + 1, 0.0);
    for (std::size_t k = 1; k <= m; ++k) {
        double num = rho[k - 1], den = 1.0;
        for (std::size_t j = 1; j < k; ++j) {
            num -= prev[j] * rho[k - 1 - j];
            den -= prev[j] * rho[j - 1];
        }
        const double kk = num / den;
        phi[k] = kk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - kk * prev[k - j];
        pacf[k - 1] = kk;
        prev = phi;
    }
    return pacf;
}

inline std::vector<CorrelogramRow> correlogram(std::span<const double> x, std::size_t max_lag) {
    if (max_lag < 1) throw InvalidArgument("correlogram needs max_lag >= 1");
    if (2 * max_lag >= x.size()) throw InvalidArgument("correlogram max_lag must be below half the series length");
    const auto rho = autocorrelations(x, max_lag);
    const auto pacf = durbin_levinson_pacf(rho);
    const double band = 1.96 / std::sqrt(static_cast<double>(x.size()));
    std::vector<CorrelogramRow> rows(max_lag);
    for (std::size_t k = 0; k < max_lag; ++k) rows[k] = {k + 1, rho[k], pacf[k], band};
    return rows;
}

}  // namespace fxcast
