#pragma once

#include <fxcast/detail/moments.hpp>
#include <fxcast/detail/ols.hpp>
#include <fxcast/distributions.hpp>
#include <fxcast/stat_tests/result.hpp>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <span>
#include <vector>

namespace fxcast {

/// Sample autocorrelations rho_1..rho_max_lag with the 1/n normalization.
inline std::vector<double> autocorrelations(std::span<const double> x, std::size_t max_lag) {
    const auto m = detail::central_moments(x);
    if (detail::is_degenerate(m)) throw DegenerateSeries("autocorrelation of a constant series");
    const std::size_t n = x.size();
    const double c0 = m.m2 * static_cast<double>(n);
    std::vector<double> rho(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double c = 0.0;
        for (std::size_t t = k; t < n; ++t) c += (x[t] - m.mean) * (x[t - k] - m.mean);
        rho[k - 1] = c / c0;
    }
    return rho;
}

struct LjungBoxRow {
    std::size_t lag = 0;
    double q_stat = 0.0;
    double p_value = 1.0;
    std::size_t dof = 0;
};

/// Q(h) = n(n+2) sum_{k<=h} rho_k^2/(n-k) for each h in `lags`, chi-square with h - fitted_params dof.
inline std::vector<LjungBoxRow> ljung_box(std::span<const double> residuals, std::span<const std::size_t> lags,
                                          std::size_t fitted_params = 0) {
    if (lags.empty()) throw InvalidArgument("Ljung-Box needs at least one lag");
    const std::size_t max_lag = *std::max_element(lags.begin(), lags.end());
    const std::size_t min_lag = *std::min_element(lags.begin(), lags.end());
    if (min_lag <= fitted_params) throw InvalidArgument("Ljung-Box lag must exceed the fitted parameter count");
    if (max_lag >= residuals.size()) throw DataError("Ljung-Box lag exceeds series length");
    const auto rho = autocorrelations(residuals, max_lag);
    const double n = static_cast<double>(residuals.size());
    std::vector<double> cumulative(max_lag + 1, 0.0);
    for (std::size_t k = 1; k <= max_lag; ++k)
        cumulative[k] = cumulative[k - 1] + rho[k - 1] * rho[k - 1] / (n - static_cast<double>(k));
    std::vector<LjungBoxRow> out;
    for (std::size_t h : lags) {
        LjungBoxRow row;
        row.lag = h;
        row.dof = h - fitted_params;
        row.q_stat = n * (n + 2.0) * cumulative[h];
        row.p_value = dist::chi2_sf(row.q_stat, static_cast<double>(row.dof));
        out.push_back(row);
    }
    return out;
}

/// Engle's ARCH-LM test. `statistic` is the n R^2 Lagrange form with chi-square(lags) p-value;
/// `alt_statistic` is the auxiliary-regression F with F(lags, n - 2 lags - 1) p-value.
inline TestResult arch_lm(std::span<const double> residuals, int lags = 1, double level = 0.05) {
    if (lags < 1) throw InvalidArgument("ARCH-LM needs at least one lag");
    const long q = lags;
    const long n = static_cast<long>(residuals.size());
    if (n <= q + 1) throw DataError("ARCH-LM: series too short for the lag count");
    const long rows = n - q;
    Eigen::MatrixXd x(rows, q + 1);
    Eigen::VectorXd y(rows);
    for (long i = 0; i < rows; ++i) {
        const long t = q + i;
        y(i) = residuals[static_cast<std::size_t>(t)] * residuals[static_cast<std::size_t>(t)];
        x(i, 0) = 1.0;
        for (long j = 1; j <= q; ++j) {
            const double e = residuals[static_cast<std::size_t>(t - j)];
            x(i, j) = e * e;
        }
    }
    if (!((y.array() - y.mean()).matrix().squaredNorm() > 0.0))
        throw DegenerateSeries("ARCH-LM: squared residuals are constant");
    if (rows <= q + 1) throw DataError("ARCH-LM: too few observations for the auxiliary regression");
    const auto fit = detail::ols(x, y);
    const double r2 = fit.r_squared();
    const double nr = static_cast<double>(rows);
    const double df2 = nr - static_cast<double>(q) - 1.0;
    TestResult r;
    r.statistic = nr * r2;
    r.critical_value = boost::math::quantile(boost::math::complement(boost::math::chi_squared(static_cast<double>(q)), level));
    r.p_value = dist::chi2_sf(r.statistic, static_cast<double>(q));
    r.tail = RejectionTail::upper;
    r.reject_null = rejects(r.statistic, r.critical_value, r.tail);
    r.alt_statistic = (r2 / static_cast<double>(q)) / ((1.0 - r2) / df2);
    r.alt_p_value = dist::f_sf(*r.alt_statistic, static_cast<double>(q), df2);
    r.spec = {Deterministic::constant, lags, -1};
    return r;
}

}  // namespace fxcast
