#pragma once

// Reference computations written without the library's code paths.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace fxcast::oracle {

/// Upper tail of a chi-square with integer dof, from the closed forms for even and odd dof.
inline double chi2_upper_tail(double x, int dof) {
    if (x <= 0.0) return 1.0;
    const double half = x / 2.0;
    if (dof % 2 == 0) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < dof / 2; ++k) {
            term *= half / k;
            sum += term;
        }
        return std::exp(-half) * sum;
    }
    double tail = std::erfc(std::sqrt(half));
    double term = std::sqrt(2.0 * x / M_PI) * std::exp(-half), sum = 0.0;
    for (int k = 1; k <= (dof - 1) / 2; ++k) {
        sum += term;
        term *= x / (2.0 * k + 1.0);
    }
    return tail + sum;
}

inline double segment_ssr(std::span<const double> y, std::size_t a, std::size_t b) {
    double m = 0.0;
    for (std::size_t t = a; t < b; ++t) m += y[t];
    m /= static_cast<double>(b - a);
    double s = 0.0;
    for (std::size_t t = a; t < b; ++t) s += (y[t] - m) * (y[t] - m);
    return s;
}

struct BestSplit {
    double ssr = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> breaks;
};

/// Exhaustive search over every placement of up to two breaks with regimes at least `h` long.
inline BestSplit brute_force_partition(std::span<const double> y, std::size_t m, std::size_t h) {
    const std::size_t n = y.size();
    BestSplit best;
    if (m == 0) return {segment_ssr(y, 0, n), {}};
    for (std::size_t k1 = h; k1 + h <= n; ++k1) {
        if (m == 1) {
            const double s = segment_ssr(y, 0, k1) + segment_ssr(y, k1, n);
            if (s < best.ssr) best = {s, {k1}};
            continue;
        }
        for (std::size_t k2 = k1 + h; k2 + h <= n; ++k2) {
            const double s = segment_ssr(y, 0, k1) + segment_ssr(y, k1, k2) + segment_ssr(y, k2, n);
            if (s < best.ssr) best = {s, {k1, k2}};
        }
    }
    return best;
}

/// Exact Gaussian AR(1) log-likelihood with a stationary first observation.
inline double ar1_log_likelihood(std::span<const double> w, double mean, double phi, double sigma2) {
    const double n = static_cast<double>(w.size());
    double q = (1.0 - phi * phi) * (w[0] - mean) * (w[0] - mean);
    for (std::size_t t = 1; t < w.size(); ++t) {
        const double e = (w[t] - mean) - phi * (w[t - 1] - mean);
        q += e * e;
    }
    return -0.5 * n * std::log(2.0 * M_PI * sigma2) + 0.5 * std::log(1.0 - phi * phi) - q / (2.0 * sigma2);
}

/// Dense multivariate-normal log density with autocovariances gamma[0..].
inline double gaussian_log_likelihood(std::span<const double> w, double mean, const std::vector<double>& gamma) {
    const auto n = static_cast<Eigen::Index>(w.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto lag = static_cast<std::size_t>(std::abs(i - j));
            cov(i, j) = lag < gamma.size() ? gamma[lag] : 0.0;
        }
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = w[static_cast<std::size_t>(i)] - mean;
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    const Eigen::VectorXd sol = llt.solve(z);
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -0.5 * (static_cast<double>(n) * std::log(2.0 * M_PI) + logdet + z.dot(sol));
}

inline double rmse(std::span<const double> f, std::span<const double> a) {
    long double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += static_cast<long double>(f[i] - a[i]) * (f[i] - a[i]);
    return static_cast<double>(std::sqrt(s / f.size()));
}

inline double mae(std::span<const double> f, std::span<const double> a) {
    long double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(f[i] - a[i]);
    return static_cast<double>(s / f.size());
}

inline double smape(std::span<const double> f, std::span<const double> a) {
    long double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(f[i] - a[i]) / (std::fabs(f[i]) + std::fabs(a[i]));
    return static_cast<double>(200.0L * s / f.size());
}

/// Ljung-Box Q(h) computed straight from its definition.
inline double ljung_box_q(std::span<const double> x, std::size_t h) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    double q = 0.0;
    for (std::size_t k = 1; k <= h; ++k) {
        double c = 0.0;
        for (std::size_t t = k; t < x.size(); ++t) c += (x[t] - mean) * (x[t - k] - mean);
        const double r = c / c0;
        q += r * r / (n - static_cast<double>(k));
    }
    return n * (n + 2.0) * q;
}

}  // namespace fxcast::oracle
