#pragma once

#include <fxcast/detail/design.hpp>
#include <fxcast/detail/long_run_variance.hpp>
#include <fxcast/detail/ols.hpp>
#include <fxcast/distributions.hpp>
#include <fxcast/stat_tests/result.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>

namespace fxcast {

namespace detail {

inline std::size_t det_index(Deterministic d) { return static_cast<std::size_t>(d); }

// MacKinnon (2010) response surfaces for the Dickey-Fuller tau, one integrated
// series: crit(T) = b0 + b1/T + b2/T^2 + b3/T^3. Rows: 1%, 5%, 10%.
inline constexpr std::array<std::array<std::array<double, 4>, 3>, 3> kTauSurface{{
    {{{-2.56574, -2.2358, -3.627, 0.0}, {-1.94100, -0.2686, -3.365, 31.223}, {-1.61682, 0.2656, -2.714, 25.364}}},
    {{{-3.43035, -6.5393, -16.786, -79.433}, {-2.86154, -2.8903, -4.234, -40.040}, {-2.56677, -1.5384, -2.809, 0.0}}},
    {{{-3.95877, -9.0531, -28.428, -134.155}, {-3.41049, -4.3904, -9.036, -45.374}, {-3.12705, -2.5856, -3.925, -22.380}}},
}};

// MacKinnon (1994) asymptotic p-value surfaces: p = Phi(poly(tau)).
struct TauPvalueSurface {
    double tau_max, tau_min, tau_star;
    std::array<double, 3> small;
    std::array<double, 4> large;
};

inline constexpr std::array<TauPvalueSurface, 3> kTauPvalue{{
    {std::numeric_limits<double>::infinity(), -19.04, -1.04, {0.6344, 1.2378, 0.032496}, {0.4797, 0.93557, -0.06999, 0.033066}},
    {2.74, -18.83, -1.61, {2.1659, 1.4412, 0.038269}, {1.7339, 0.93202, -0.12745, -0.010368}},
    {0.7, -16.18, -2.89, {3.2512, 1.6047, 0.049588}, {2.5261, 0.61654, -0.37956, -0.060285}},
}};

}  // namespace detail

/// 5% (or 1%/10%) Dickey-Fuller critical value at sample size `nobs`.
inline double dickey_fuller_critical(Deterministic d, double nobs, double level = 0.05) {
    const std::size_t row = level <= 0.01 ? 0 : level <= 0.05 ? 1 : 2;
    const auto& b = detail::kTauSurface[detail::det_index(d)][row];
    return b[0] + b[1] / nobs + b[2] / (nobs * nobs) + b[3] / (nobs * nobs * nobs);
}

/// Approximate asymptotic p-value of a Dickey-Fuller tau statistic.
inline double dickey_fuller_pvalue(Deterministic d, double tau) {
    const auto& s = detail::kTauPvalue[detail::det_index(d)];
    if (tau > s.tau_max) return 1.0;
    if (tau < s.tau_min) return 0.0;
    double z = 0.0, p = 1.0;
    if (tau <= s.tau_star) {
        for (double c : s.small) { z += c * p; p *= tau; }
    } else {
        for (double c : s.large) { z += c * p; p *= tau; }
    }
    return dist::normal_cdf(z);
}

enum class LagRule { aic, fixed };

struct AdfOptions {
    Deterministic deterministic = Deterministic::constant;
    LagRule lag_rule = LagRule::aic;
    int max_lag = -1;  // -1: floor(12 (T/100)^{1/4})
    int fixed_lag = 0;
    double level = 0.05;
};

inline int schwert_max_lag(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

namespace detail {

// Regression of dy_t on y_{t-1}, deterministic terms and `lags` lagged differences,
// using observations t = skip .. T-1 of the differenced series (skip >= lags).
inline OlsFit adf_regression(std::span<const double> y, Deterministic det, int lags, int skip) {
    const long n_diff = static_cast<long>(y.size()) - 1;
    const long rows = n_diff - skip;
    const long det_cols = det == Deterministic::none ? 0 : det == Deterministic::constant ? 1 : 2;
    if (rows <= 1 + det_cols + lags + 1) throw DataError("ADF: too few observations after lagging");
    Eigen::MatrixXd x(rows, 1 + det_cols + lags);
    Eigen::VectorXd dy(rows);
    const Eigen::MatrixXd dcols = deterministic_columns(det, rows, skip);
    for (long i = 0; i < rows; ++i) {
        const long t = skip + i;  // index into differences: dy[t] = y[t+1]-y[t]
        dy(i) = y[t + 1] - y[t];
        x(i, 0) = y[t];
        for (long c = 0; c < det_cols; ++c) x(i, 1 + c) = dcols(i, c);
        for (int j = 1; j <= lags; ++j) x(i, 1 + det_cols + j - 1) = y[t + 1 - j] - y[t - j];
    }
    return ols(x, dy);
}

}  // namespace detail

/// Augmented Dickey-Fuller tau test; rejects a unit root when tau < critical.
inline TestResult adf_test(std::span<const double> y, const AdfOptions& opt = {}) {
    if (y.size() < 20) throw DataError("ADF needs at least 20 observations");
    int lag = opt.fixed_lag;
    if (opt.lag_rule == LagRule::aic) {
        const int max_lag = opt.max_lag >= 0 ? opt.max_lag : schwert_max_lag(y.size());
        double best = std::numeric_limits<double>::infinity();
        lag = 0;
        for (int p = 0; p <= max_lag; ++p) {
            // common sample across candidate lags
            const auto f = detail::adf_regression(y, opt.deterministic, p, max_lag);
            const double aic = -2.0 * f.log_likelihood() + 2.0 * static_cast<double>(f.k);
            if (aic < best - 1e-12) {
                best = aic;
                lag = p;
            }
        }
    }
    const auto fit = detail::adf_regression(y, opt.deterministic, lag, lag);
    TestResult r;
    r.statistic = fit.t_stat(0);
    r.critical_value = dickey_fuller_critical(opt.deterministic, static_cast<double>(fit.n), opt.level);
    r.p_value = dickey_fuller_pvalue(opt.deterministic, r.statistic);
    r.p_value_approximate = true;
    r.tail = RejectionTail::lower;
    r.reject_null = rejects(r.statistic, r.critical_value, r.tail);
    r.spec = {opt.deterministic, lag, -1};
    return r;
}

struct PpOptions {
    Deterministic deterministic = Deterministic::constant;
    int bandwidth = -1;  // -1: Newey-West fixed rule
    double level = 0.05;
};

/// Phillips-Perron Z_tau: the unaugmented Dickey-Fuller t corrected with a
/// Bartlett long-run variance of the regression residuals.
inline TestResult pp_test(std::span<const double> y, const PpOptions& opt = {}) {
    if (y.size() < 20) throw DataError("Phillips-Perron needs at least 20 observations");
    const auto fit = detail::adf_regression(y, opt.deterministic, 0, 0);
    const double n = static_cast<double>(fit.n);
    const int bw = opt.bandwidth >= 0 ? opt.bandwidth : detail::newey_west_bandwidth(static_cast<std::size_t>(fit.n));
    const std::span<const double> resid(fit.residuals.data(), static_cast<std::size_t>(fit.residuals.size()));
    const double gamma0 = fit.ssr / n;
    const double lam2 = detail::bartlett_lrv(resid, bw);
    if (!(lam2 > 0.0)) throw DegenerateSeries("Phillips-Perron long-run variance is not positive");
    const double lam = std::sqrt(lam2);
    const double sigma = std::sqrt(fit.sigma2);
    const double se_rho = fit.se(0);
    TestResult r;
    r.statistic = std::sqrt(gamma0 / lam2) * fit.t_stat(0) - 0.5 * ((lam2 - gamma0) / lam) * (n * se_rho / sigma);
    r.critical_value = dickey_fuller_critical(opt.deterministic, n, opt.level);
    r.p_value = dickey_fuller_pvalue(opt.deterministic, r.statistic);
    r.p_value_approximate = true;
    r.tail = RejectionTail::lower;
    r.reject_null = rejects(r.statistic, r.critical_value, r.tail);
    r.spec = {opt.deterministic, 0, bw};
    return r;
}

}  // namespace fxcast
