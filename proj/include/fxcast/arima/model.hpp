#pragma once

#include <fxcast/error.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace fxcast {

struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    bool include_constant = true;

    void validate() const {
        if (p < 0 || d < 0 || q < 0) throw InvalidArgument("ARIMA orders must be non-negative");
        if (p + q < 1 && !include_constant) throw InvalidArgument("ARIMA spec needs p + q >= 1 or a constant");
    }

    std::string label() const {
        if (d == 0 && p > 0 && q == 0) return "AR(" + std::to_string(p) + ")";
        if (d == 0 && p == 0 && q > 0) return "MA(" + std::to_string(q) + ")";
        if (d == 0) return "ARMA(" + std::to_string(p) + "," + std::to_string(q) + ")";
        return "ARIMA(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
    }

    friend bool operator==(const ArimaSpec&, const ArimaSpec&) = default;
};

/// Parameters of (1 - sum phi_i L^i)(w_t - mean) = (1 + sum theta_j L^j) e_t, w = (1-L)^d y.
/// `mean` is the process mean of the differenced series (zero without a constant).
struct ArimaModel {
    ArimaSpec spec;
    double mean = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
    double sigma2 = 1.0;

    /// Intercept form c = mean * (1 - sum phi).
    double intercept() const {
        double s = 1.0;
        for (double a : ar) s -= a;
        return mean * s;
    }
};

struct Coefficient {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
};

struct ArimaFit {
    ArimaModel model;
    std::vector<Coefficient> coefficients;  // C (mean), AR(1..p), MA(1..q)
    double log_likelihood = 0.0;
    double aic = 0.0, bic = 0.0, hq = 0.0;  // per observation
    std::vector<double> residuals;          // one-step innovations on the differenced scale
    double r_squared = 0.0, adj_r_squared = 0.0, f_stat = 0.0, f_prob = 1.0;
    std::size_t n_obs = 0;  // effective sample after differencing
    std::size_t n_params = 0;
    bool boundary = false;  // a partial autocorrelation sits at the stationarity/invertibility edge
    int iterations = 0;

    const ArimaSpec& spec() const { return model.spec; }
};

namespace detail {

/// Maps partial autocorrelations in (-1,1) to the coefficients of a stationary AR polynomial.
inline std::vector<double> pacf_to_ar(const std::vector<double>& r) {
    const std::size_t p = r.size();
    std::vector<double> phi(p), prev(p);
    for (std::size_t k = 0; k < p; ++k) {
        phi[k] = r[k];
        for (std::size_t j = 0; j < k; ++j) phi[j] = prev[j] - r[k] * prev[k - 1 - j];
        prev = phi;
    }
    return phi;
}

/// Inverse of pacf_to_ar; requires a stationary polynomial.
inline std::vector<double> ar_to_pacf(std::vector<double> phi) {
    const std::size_t p = phi.size();
    std::vector<double> r(p);
    for (std::size_t k = p; k-- > 0;) {
        const double rk = phi[k];
        r[k] = rk;
        if (std::abs(rk) >= 1.0) throw NumericalError("AR polynomial is not stationary");
        std::vector<double> lower(k);
        for (std::size_t j = 0; j < k; ++j) lower[j] = (phi[j] + rk * phi[k - 1 - j]) / (1.0 - rk * rk);
        phi = lower;
    }
    return r;
}

/// Moduli of the roots of 1 + sign * sum c_i z^i, via the companion matrix.
inline std::vector<double> polynomial_root_moduli(std::vector<double> c, double sign) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    const auto n = static_cast<Eigen::Index>(c.size());
    if (n == 0) return {};
    auto coef = [&](Eigen::Index i) { return i == 0 ? 1.0 : sign * c[static_cast<std::size_t>(i - 1)]; };
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -coef(n - 1 - j) / coef(n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::abs(es.eigenvalues()(i)));
    return out;
}

}  // namespace detail

/// Minimum modulus of the AR polynomial roots (> 1 means stationary); +inf without AR terms.
inline double min_ar_root_modulus(const ArimaModel& m) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : detail::polynomial_root_moduli(m.ar, -1.0)) best = std::min(best, v);
    return best;
}

inline double min_ma_root_modulus(const ArimaModel& m) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : detail::polynomial_root_moduli(m.ma, 1.0)) best = std::min(best, v);
    return best;
}

}  // namespace fxcast
