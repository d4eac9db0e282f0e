#pragma once

#include <fxcast/error.hpp>

#include <Eigen/Dense>

#include <cmath>

namespace fxcast::detail {

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd xtx_inv;
    double ssr = 0.0;
    double sigma2 = 0.0;  // ssr / (n - k)
    double tss = 0.0;     // centered total sum of squares
    long n = 0;
    long k = 0;

    double se(Eigen::Index i) const { return std::sqrt(sigma2 * xtx_inv(i, i)); }
    double t_stat(Eigen::Index i) const { return beta(i) / se(i); }
    double r_squared() const { return tss > 0.0 ? 1.0 - ssr / tss : 0.0; }
    /// Gaussian log-likelihood at the ML variance ssr / n.
    double log_likelihood() const {
        const double nd = static_cast<double>(n);
        return -0.5 * nd * (std::log(2.0 * M_PI * ssr / nd) + 1.0);
    }
};

inline OlsFit ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    if (x.rows() != y.size()) throw InvalidArgument("ols: design and response differ in length");
    if (x.rows() <= x.cols()) throw DataError("ols: not enough observations for the regressors");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < x.cols()) throw CollinearRegressors("design matrix is rank deficient");
    OlsFit f;
    f.n = x.rows();
    f.k = x.cols();
    f.beta = qr.solve(y);
    f.residuals = y - x * f.beta;
    f.ssr = f.residuals.squaredNorm();
    f.sigma2 = f.ssr / static_cast<double>(f.n - f.k);
    f.xtx_inv = (x.transpose() * x).inverse();
    f.tss = (y.array() - y.mean()).matrix().squaredNorm();
    return f;
}

}  // namespace fxcast::detail
