#pragma once

#include <fxcast/arima/model.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace fxcast {

/// Harvey state-space form of a zero-mean ARMA(p, q) with unit innovation variance:
/// alpha_{t+1} = T alpha_t + R e_t, w_t - mean = alpha_t[0].
/// T has the AR coefficients in its first column and ones on the superdiagonal, so products
/// with T are formed in O(r) per column instead of as dense matrix products.
class ArmaStateSpace {
public:
    explicit ArmaStateSpace(const ArimaModel& m) : mean_(m.mean) {
        const auto p = static_cast<Eigen::Index>(m.ar.size());
        const auto q = static_cast<Eigen::Index>(m.ma.size());
        r_ = std::max<Eigen::Index>(p, q + 1);
        phi_ = Eigen::VectorXd::Zero(r_);
        for (Eigen::Index i = 0; i < p; ++i) phi_(i) = m.ar[static_cast<std::size_t>(i)];
        Eigen::VectorXd rvec = Eigen::VectorXd::Zero(r_);
        rvec(0) = 1.0;
        for (Eigen::Index j = 0; j < q; ++j) rvec(j + 1) = m.ma[static_cast<std::size_t>(j)];
        rrt_ = rvec * rvec.transpose();
        p0_ = stationary_covariance();
        if (!p0_.allFinite() || !(p0_(0, 0) > 0.0)) throw NumericalError("ARMA model is not stationary");
    }

    /// Filter state: predicted mean and covariance of alpha_t given w_1..w_{t-1}.
    struct State {
        Eigen::VectorXd a;
        Eigen::MatrixXd p;
        bool steady = false;
        Eigen::MatrixXd scratch;
    };

    State initial_state() const { return {Eigen::VectorXd::Zero(r_), p0_, false, Eigen::MatrixXd(r_, r_)}; }

    /// One-step prediction of w_t from the state.
    double predict(const State& s) const { return mean_ + s.a(0); }

    /// Incorporates w_t; returns the innovation v_t and its (unit-sigma) variance F_t.
    std::pair<double, double> update(State& s, double w) const {
        const double v = w - mean_ - s.a(0);
        const double f = s.p(0, 0);
        if (!(f > 0.0) || !std::isfinite(f)) throw NumericalError("Kalman filter: non-positive innovation variance");
        const double a0 = s.a(0);
        // a <- T a + K v with K = T P e1 / f
        for (Eigen::Index i = 0; i < r_; ++i) {
            const double ta = phi_(i) * a0 + (i + 1 < r_ ? s.a(i + 1) : 0.0);
            const double k = (phi_(i) * s.p(0, 0) + (i + 1 < r_ ? s.p(i + 1, 0) : 0.0)) / f;
            s.a(i) = ta + k * v;
        }
        if (!s.steady) {
            auto& m = s.scratch;  // m = T P
            for (Eigen::Index j = 0; j < r_; ++j)
                for (Eigen::Index i = 0; i < r_; ++i) m(i, j) = phi_(i) * s.p(0, j) + (i + 1 < r_ ? s.p(i + 1, j) : 0.0);
            // P <- m T' + R R' - (m e1)(m e1)' / f, where m e1 = T P e1
            double change = 0.0;
            for (Eigen::Index j = 0; j < r_; ++j) {
                for (Eigen::Index i = j; i < r_; ++i) {
                    const double mt = phi_(j) * m(i, 0) + (j + 1 < r_ ? m(i, j + 1) : 0.0);
                    const double val = mt + rrt_(i, j) - m(i, 0) * m(j, 0) / f;
                    change = std::max(change, std::abs(val - s.p(i, j)));
                    s.p(i, j) = val;
                }
            }
            for (Eigen::Index j = 0; j < r_; ++j)
                for (Eigen::Index i = 0; i < j; ++i) s.p(i, j) = s.p(j, i);
            s.steady = change < 1e-15;
        }
        return {v, f};
    }

    /// h-step-ahead forecasts of w after the last update (h = 1..horizon).
    std::vector<double> forecast(const State& s, std::size_t horizon) const {
        std::vector<double> out(horizon);
        Eigen::VectorXd a = s.a;
        for (std::size_t h = 0; h < horizon; ++h) {
            out[h] = mean_ + a(0);
            const double a0 = a(0);
            for (Eigen::Index i = 0; i < r_; ++i) a(i) = phi_(i) * a0 + (i + 1 < r_ ? a(i + 1) : 0.0);
        }
        return out;
    }

    Eigen::Index state_dim() const { return r_; }
    const Eigen::MatrixXd& stationary_p() const { return p0_; }

    Eigen::MatrixXd transition() const {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(r_, r_);
        t.col(0) = phi_;
        for (Eigen::Index i = 0; i + 1 < r_; ++i) t(i, i + 1) = 1.0;
        return t;
    }

private:
    /// Solves P = T P T' + R R' by the doubling recursion
    /// P_{k+1} = P_k + A_k P_k A_k', A_{k+1} = A_k^2, starting from P_0 = R R', A_0 = T.
    Eigen::MatrixXd stationary_covariance() const {
        Eigen::MatrixXd a = transition();
        Eigen::MatrixXd p = rrt_;
        for (int it = 0; it < 64; ++it) {
            const Eigen::MatrixXd inc = a * p * a.transpose();
            p += inc;
            if (inc.cwiseAbs().maxCoeff() <= 1e-17 * p.cwiseAbs().maxCoeff()) break;
            a = (a * a).eval();
            if (!a.allFinite()) break;
            if (it == 63) throw NumericalError("stationary covariance did not converge");
        }
        return 0.5 * (p + p.transpose());
    }

    double mean_;
    Eigen::Index r_ = 1;
    Eigen::VectorXd phi_;
    Eigen::MatrixXd rrt_;
    Eigen::MatrixXd p0_;
};

struct Innovations {
    std::vector<double> v;
    std::vector<double> f;
    double sum_log_f = 0.0;
    double sum_scaled_sq = 0.0;  // sum v^2 / F
};

inline Innovations run_filter(const ArimaModel& m, std::span<const double> w) {
    const ArmaStateSpace ss(m);
    auto state = ss.initial_state();
    Innovations out;
    out.v.reserve(w.size());
    out.f.reserve(w.size());
    for (double x : w) {
        const auto [v, f] = ss.update(state, x);
        out.v.push_back(v);
        out.f.push_back(f);
        out.sum_log_f += std::log(f);
        out.sum_scaled_sq += v * v / f;
    }
    return out;
}

/// Exact Gaussian log-likelihood at the model's sigma2.
inline double exact_log_likelihood(const ArimaModel& m, std::span<const double> w) {
    const auto inn = run_filter(m, w);
    const double n = static_cast<double>(w.size());
    return -0.5 * n * std::log(2.0 * M_PI * m.sigma2) - 0.5 * inn.sum_log_f - 0.5 * inn.sum_scaled_sq / m.sigma2;
}

/// Log-likelihood with sigma2 profiled out; also returns the ML sigma2.
inline double concentrated_log_likelihood(const ArimaModel& m, std::span<const double> w, double* sigma2_out = nullptr) {
    const auto inn = run_filter(m, w);
    const double n = static_cast<double>(w.size());
    const double s2 = inn.sum_scaled_sq / n;
    if (sigma2_out) *sigma2_out = s2;
    return -0.5 * n * (std::log(2.0 * M_PI * s2) + 1.0) - 0.5 * inn.sum_log_f;
}

}  // namespace fxcast
