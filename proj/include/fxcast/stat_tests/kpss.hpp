#pragma once

#include <fxcast/detail/design.hpp>
#include <fxcast/detail/long_run_variance.hpp>
#include <fxcast/detail/ols.hpp>
#include <fxcast/stat_tests/result.hpp>

#include <array>
#include <span>
#include <vector>

namespace fxcast {

struct KpssOptions {
    Deterministic deterministic = Deterministic::constant;  // constant or constant_trend
    int bandwidth = -1;                                     // -1: Newey-West fixed rule
    double level = 0.05;
};

namespace detail {

// Asymptotic upper quantiles at 10%, 5%, 2.5%, 1%.
inline constexpr std::array<double, 4> kKpssLevels{0.10, 0.05, 0.025, 0.01};
inline constexpr std::array<double, 4> kKpssConstant{0.347, 0.463, 0.574, 0.739};
inline constexpr std::array<double, 4> kKpssTrend{0.119, 0.146, 0.176, 0.216};

}  // namespace detail

inline double kpss_critical(Deterministic d, double level = 0.05) {
    const auto& table = d == Deterministic::constant_trend ? detail::kKpssTrend : detail::kKpssConstant;
    for (std::size_t i = 0; i < detail::kKpssLevels.size(); ++i)
        if (level >= detail::kKpssLevels[i] - 1e-12) return table[i];
    return table.back();
}

/// Table interpolation; clipped to [0.01, 0.10].
inline double kpss_pvalue(Deterministic d, double stat) {
    const auto& q = d == Deterministic::constant_trend ? detail::kKpssTrend : detail::kKpssConstant;
    const auto& p = detail::kKpssLevels;
    if (stat <= q.front()) return p.front();
    if (stat >= q.back()) return p.back();
    for (std::size_t i = 1; i < q.size(); ++i) {
        if (stat <= q[i]) {
            const double w = (stat - q[i - 1]) / (q[i] - q[i - 1]);
            return p[i - 1] + w * (p[i] - p[i - 1]);
        }
    }
    return p.back();
}

/// KPSS LM statistic; the null is (level or trend) stationarity, rejected for large values.
inline TestResult kpss_test(std::span<const double> y, const KpssOptions& opt = {}) {
    if (y.size() < 20) throw DataError("KPSS needs at least 20 observations");
    if (opt.deterministic == Deterministic::none) throw InvalidArgument("KPSS needs a constant or constant+trend");
    const long n = static_cast<long>(y.size());
    Eigen::MatrixXd x = detail::deterministic_columns(opt.deterministic, n);
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    const auto fit = detail::ols(x, yv);
    std::vector<double> resid(fit.residuals.data(), fit.residuals.data() + n);
    double partial = 0.0, sum_sq = 0.0;
    for (double e : resid) {
        partial += e;
        sum_sq += partial * partial;
    }
    const int bw = opt.bandwidth >= 0 ? opt.bandwidth : detail::newey_west_bandwidth(y.size());
    const double lrv = detail::bartlett_lrv(resid, bw);
    if (!(lrv > 0.0)) throw DegenerateSeries("KPSS long-run variance is not positive");
    TestResult r;
    r.statistic = sum_sq / (static_cast<double>(n) * static_cast<double>(n) * lrv);
    r.critical_value = kpss_critical(opt.deterministic, opt.level);
    r.p_value = kpss_pvalue(opt.deterministic, r.statistic);
    r.p_value_approximate = true;
    r.tail = RejectionTail::upper;
    r.reject_null = rejects(r.statistic, r.critical_value, r.tail);
    r.spec = {opt.deterministic, 0, bw};
    return r;
}

}  // namespace fxcast
