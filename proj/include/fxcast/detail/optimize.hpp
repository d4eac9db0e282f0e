#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace fxcast::detail {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct MinimizeResult {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead simplex. Non-finite objective values are treated as +inf.
inline MinimizeResult nelder_mead(const Objective& f_raw, Eigen::VectorXd x0, int max_iter, double rel_tol = 1e-10,
                                  double step = 0.1) {
    auto f = [&](const Eigen::VectorXd& x) {
        const double v = f_raw(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> vals(static_cast<std::size_t>(n + 1));
    for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

    MinimizeResult res;
    std::vector<std::size_t> order(pts.size());
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
        const double spread = std::abs(vals[worst] - vals[best]);
        if (std::isfinite(vals[worst]) && spread <= rel_tol * (std::abs(vals[best]) + 1e-12)) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i : order)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
        const double fr = f(xr);
        if (fr < vals[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = f(xe);
            if (fe < fr) { pts[worst] = xe; vals[worst] = fe; }
            else { pts[worst] = xr; vals[worst] = fr; }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                               : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
            const double fc = f(xc);
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    res.x = pts[best];
    res.value = vals[best];
    return res;
}

inline Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = 1e-5 * std::max(1.0, std::abs(x(i)));
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

/// Central-difference Hessian.
inline Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd hess(n, n);
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) h(i) = 1e-4 * std::max(1.0, std::abs(x(i)));
    const double f0 = f(x);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            Eigen::VectorXd a = x, b = x, c = x, d = x;
            a(i) += h(i); a(j) += h(j);
            b(i) += h(i); b(j) -= h(j);
            c(i) -= h(i); c(j) += h(j);
            d(i) -= h(i); d(j) -= h(j);
            double v;
            if (i == j) {
                Eigen::VectorXd p = x, m = x;
                p(i) += h(i);
                m(i) -= h(i);
                v = (f(p) - 2.0 * f0 + f(m)) / (h(i) * h(i));
            } else {
                v = (f(a) - f(b) - f(c) + f(d)) / (4.0 * h(i) * h(j));
            }
            hess(i, j) = hess(j, i) = v;
        }
    }
    return hess;
}

/// BFGS with a backtracking Armijo line search and numeric gradients. Converges when the
/// relative objective improvement drops below `rel_tol` or the gradient vanishes.
inline MinimizeResult bfgs(const Objective& f, Eigen::VectorXd x, int max_iter, double rel_tol = 1e-9) {
    const Eigen::Index n = x.size();
    MinimizeResult res;
    double fx = f(x);
    Eigen::VectorXd g = numeric_gradient(f, x);
    Eigen::MatrixXd inv_h = Eigen::MatrixXd::Identity(n, n);
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        if (g.lpNorm<Eigen::Infinity>() < 1e-7) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd dir = -inv_h * g;
        if (dir.dot(g) >= 0.0) {
            inv_h.setIdentity();
            dir = -g;
        }
        double step = 1.0;
        double f_new = fx;
        Eigen::VectorXd x_new = x;
        bool improved = false;
        for (int k = 0; k < 40; ++k) {
            x_new = x + step * dir;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * dir.dot(g)) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            // no descent available at numeric-gradient resolution
            res.converged = g.lpNorm<Eigen::Infinity>() < 1e-3;
            break;
        }
        const Eigen::VectorXd g_new = numeric_gradient(f, x_new);
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd yv = g_new - g;
        const double rel = std::abs(fx - f_new) / std::max(1.0, std::abs(fx));
        x = x_new;
        fx = f_new;
        g = g_new;
        const double sy = s.dot(yv);
        if (sy > 1e-12) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            inv_h = (eye - rho * s * yv.transpose()) * inv_h * (eye - rho * yv * s.transpose()) + rho * s * s.transpose();
        }
        if (rel < rel_tol) {
            res.converged = true;
            ++res.iterations;
            break;
        }
    }
    res.x = x;
    res.value = fx;
    return res;
}

}  // namespace fxcast::detail
