#pragma once

#include <fxcast/arima/correlogram.hpp>
#include <fxcast/arima/kalman.hpp>
#include <fxcast/arima/model.hpp>
#include <fxcast/detail/moments.hpp>
#include <fxcast/detail/optimize.hpp>
#include <fxcast/distributions.hpp>
#include <fxcast/series.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace fxcast {

struct InformationCriteria {
    double aic = 0.0, bic = 0.0, hq = 0.0;
};

/// Per-observation criteria: (-2 loglik + penalty) / T.
inline InformationCriteria information_criteria(double log_likelihood, std::size_t n_params, std::size_t n_obs) {
    if (n_obs <= n_params) throw InvalidArgument("information criteria need more observations than parameters");
    const double t = static_cast<double>(n_obs), k = static_cast<double>(n_params);
    const double base = -2.0 * log_likelihood;
    InformationCriteria ic;
    ic.aic = (base + 2.0 * k) / t;
    ic.bic = (base + k * std::log(t)) / t;
    // ln ln T is undefined for T < 3; the penalty is then taken as zero
    ic.hq = (base + 2.0 * k * (t > std::exp(1.0) ? std::log(std::log(t)) : 0.0)) / t;
    return ic;
}

struct FitOptions {
    int max_iterations = 500;
    double rel_tol = 1e-9;
    /// Partial autocorrelations beyond this magnitude flag the fit as a boundary solution.
    double boundary_pacf = 0.999;
};

namespace detail {

struct ArmaParameterMap {
    ArimaSpec spec;
    double mean_scale = 1.0;

    Eigen::Index size() const { return (spec.include_constant ? 1 : 0) + spec.p + spec.q; }

    std::vector<double> partials(const Eigen::VectorXd& u, Eigen::Index offset, int count) const {
        std::vector<double> r(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) r[static_cast<std::size_t>(i)] = std::tanh(u(offset + i));
        return r;
    }

    ArimaModel to_model(const Eigen::VectorXd& u) const {
        ArimaModel m;
        m.spec = spec;
        Eigen::Index o = 0;
        if (spec.include_constant) m.mean = u(o++) * mean_scale;
        m.ar = pacf_to_ar(partials(u, o, spec.p));
        o += spec.p;
        m.ma = pacf_to_ar(partials(u, o, spec.q));
        for (double& t : m.ma) t = -t;
        return m;
    }

    Eigen::VectorXd from_model(const ArimaModel& m) const {
        Eigen::VectorXd u(size());
        Eigen::Index o = 0;
        if (spec.include_constant) u(o++) = m.mean / mean_scale;
        const auto clamp_atanh = [](double r) { return std::atanh(std::clamp(r, -0.99, 0.99)); };
        for (double r : ar_to_pacf(m.ar)) u(o++) = clamp_atanh(r);
        std::vector<double> neg(m.ma);
        for (double& t : neg) t = -t;
        for (double r : ar_to_pacf(neg)) u(o++) = clamp_atanh(r);
        return u;
    }

    /// Natural parameters (mean, phi, theta) as a flat vector.
    Eigen::VectorXd natural(const ArimaModel& m) const {
        Eigen::VectorXd x(size());
        Eigen::Index o = 0;
        if (spec.include_constant) x(o++) = m.mean;
        for (double a : m.ar) x(o++) = a;
        for (double t : m.ma) x(o++) = t;
        return x;
    }

    ArimaModel from_natural(const Eigen::VectorXd& x) const {
        ArimaModel m;
        m.spec = spec;
        Eigen::Index o = 0;
        if (spec.include_constant) m.mean = x(o++);
        for (int i = 0; i < spec.p; ++i) m.ar.push_back(x(o++));
        for (int i = 0; i < spec.q; ++i) m.ma.push_back(x(o++));
        return m;
    }
};

}  // namespace detail

/// Exact Gaussian maximum likelihood for ARIMA(p, d, q) on the d-times differenced series.
/// The optimizer works on partial autocorrelations (tanh-mapped) so every candidate is
/// stationary and invertible; five deterministic starts seed a simplex search that a
/// quasi-Newton stage then polishes.
inline ArimaFit fit_arima(std::span<const double> series, const ArimaSpec& spec, const FitOptions& opt = {}) {
    spec.validate();
    const ReturnSeries source{std::vector<double>(series.begin(), series.end())};
    if (static_cast<std::size_t>(spec.d) >= series.size()) throw DataError("series too short for differencing");
    const auto w_series = difference(source, static_cast<std::size_t>(spec.d));
    const std::span<const double> w = w_series.values();
    const std::size_t n = w.size();
    const std::size_t k = static_cast<std::size_t>((spec.include_constant ? 1 : 0) + spec.p + spec.q);
    if (n <= k + 2) throw DataError("effective sample too short for " + spec.label());
    const auto mom = detail::central_moments(w);
    if (detail::is_degenerate(mom)) throw DegenerateSeries("ARIMA fit on a constant differenced series");

    detail::ArmaParameterMap map{spec, std::sqrt(mom.m2)};
    const double nd = static_cast<double>(n);
    const detail::Objective objective = [&](const Eigen::VectorXd& u) {
        try {
            return -concentrated_log_likelihood(map.to_model(u), w) / nd;
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // deterministic starting points
    std::vector<Eigen::VectorXd> starts;
    const Eigen::Index dim = map.size();
    const Eigen::Index mean_off = spec.include_constant ? 1 : 0;
    auto base = [&] {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(dim);
        if (spec.include_constant) u(0) = mom.mean / map.mean_scale;
        return u;
    };
    starts.push_back(base());
    {
        Eigen::VectorXd u = base();
        if (spec.p > 0) {
            const auto pacf = durbin_levinson_pacf(autocorrelations(w, static_cast<std::size_t>(spec.p)));
            for (int i = 0; i < spec.p; ++i) u(mean_off + i) = std::atanh(std::clamp(pacf[static_cast<std::size_t>(i)], -0.9, 0.9));
        }
        starts.push_back(u);
    }
    for (double s : {0.3, -0.3}) {
        Eigen::VectorXd u = base();
        for (Eigen::Index i = mean_off; i < dim; ++i) u(i) = s;
        starts.push_back(u);
    }
    {
        Eigen::VectorXd u = base();
        for (Eigen::Index i = mean_off; i < dim; ++i) u(i) = (i % 2 == 0 ? 0.4 : -0.4);
        starts.push_back(u);
    }

    const Eigen::VectorXd zero_start = starts.front();
    const double zero_value = objective(zero_start);
    detail::MinimizeResult best;
    for (const auto& s : starts) {
        auto r = detail::nelder_mead(objective, s, 150 * static_cast<int>(dim + 1), 1e-10, 0.2);
        if (r.value < best.value) best = r;
    }
    if (!std::isfinite(best.value)) throw NumericalError("likelihood is not finite at any start for " + spec.label());
    auto simplex = detail::nelder_mead(objective, best.x, opt.max_iterations, 1e-12, 0.05);
    if (simplex.value < best.value) best = simplex;
    auto polished = detail::bfgs(objective, best.x, opt.max_iterations, opt.rel_tol);
    if (!polished.converged) throw NonConvergence(spec.label() + " after " + std::to_string(opt.max_iterations) + " iterations");
    if (polished.value > best.value) polished.x = best.x, polished.value = best.value;
    if (zero_value < polished.value) polished.x = zero_start, polished.value = zero_value;

    ArimaFit fit;
    fit.model = map.to_model(polished.x);
    fit.log_likelihood = concentrated_log_likelihood(fit.model, w, &fit.model.sigma2);
    fit.iterations = polished.iterations;
    fit.n_obs = n;
    fit.n_params = k;
    for (Eigen::Index i = mean_off; i < dim; ++i)
        if (std::abs(std::tanh(polished.x(i))) > opt.boundary_pacf) fit.boundary = true;

    const auto inn = run_filter(fit.model, w);
    fit.residuals = inn.v;

    // standard errors from the Hessian of the profile likelihood in natural parameters
    const detail::Objective natural_nll = [&](const Eigen::VectorXd& x) {
        try {
            return -concentrated_log_likelihood(map.from_natural(x), w);
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const Eigen::VectorXd theta = map.natural(fit.model);
    const Eigen::MatrixXd hess = detail::numeric_hessian(natural_nll, theta);
    Eigen::VectorXd se = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::quiet_NaN());
    if (hess.allFinite()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
        if (es.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0) {
            const Eigen::MatrixXd cov = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
                                        es.eigenvectors().transpose();
            se = cov.diagonal().cwiseSqrt();
        }
    }
    if (!se.allFinite()) fit.boundary = true;

    const double dof = nd - static_cast<double>(k);
    Eigen::Index o = 0;
    auto add = [&](std::string name) {
        Coefficient c;
        c.name = std::move(name);
        c.value = theta(o);
        c.std_error = se(o);
        c.t_stat = c.value / c.std_error;
        c.p_value = std::isfinite(c.t_stat) ? dist::t_two_sided(c.t_stat, dof) : std::numeric_limits<double>::quiet_NaN();
        fit.coefficients.push_back(c);
        ++o;
    };
    if (spec.include_constant) add("C");
    for (int i = 1; i <= spec.p; ++i) add("AR(" + std::to_string(i) + ")");
    for (int i = 1; i <= spec.q; ++i) add("MA(" + std::to_string(i) + ")");

    double ssr = 0.0, tss = 0.0;
    for (double v : fit.residuals) ssr += v * v;
    for (double x : w) tss += (x - mom.mean) * (x - mom.mean);
    fit.r_squared = 1.0 - ssr / tss;
    const double kd = static_cast<double>(k);
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (nd - 1.0) / (nd - kd);
    if (k > 1) {
        fit.f_stat = (fit.r_squared / (kd - 1.0)) / ((1.0 - fit.r_squared) / (nd - kd));
        fit.f_prob = dist::f_sf(fit.f_stat, kd - 1.0, nd - kd);
    }
    const auto ic = information_criteria(fit.log_likelihood, k, n);
    fit.aic = ic.aic;
    fit.bic = ic.bic;
    fit.hq = ic.hq;
    return fit;
}

enum class Criterion { aic, bic, hq };

inline const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::aic: return "aic";
        case Criterion::bic: return "bic";
        case Criterion::hq: return "hq";
    }
    return "?";
}

inline double criterion_value(const ArimaFit& f, Criterion c) {
    return c == Criterion::aic ? f.aic : c == Criterion::bic ? f.bic : f.hq;
}

struct SelectionEntry {
    ArimaSpec spec;
    double value = 0.0;
    ArimaFit fit;
};

struct SelectionResult {
    std::vector<SelectionEntry> ranked;  // ascending criterion
    std::vector<std::string> warnings;   // grid cells that failed to fit
};

struct OrderRange {
    int lo = 1;
    int hi = 1;
};

/// Fits every (p, q) in the grid on the d-differenced series and ranks by the criterion.
/// Ties go to the smaller p + q, then the smaller p.
inline SelectionResult select_arima(std::span<const double> series, OrderRange p_range, OrderRange q_range, int d,
                                    Criterion criterion, bool include_constant = true, const FitOptions& opt = {}) {
    if (p_range.lo > p_range.hi || q_range.lo > q_range.hi || p_range.lo < 0 || q_range.lo < 0)
        throw InvalidArgument("selection ranges must be non-empty and non-negative");
    SelectionResult out;
    for (int p = p_range.lo; p <= p_range.hi; ++p) {
        for (int q = q_range.lo; q <= q_range.hi; ++q) {
            const ArimaSpec spec{p, d, q, include_constant};
            try {
                auto f = fit_arima(series, spec, opt);
                const double v = criterion_value(f, criterion);
                out.ranked.push_back({spec, v, std::move(f)});
            } catch (const Error& e) {
                out.warnings.push_back(spec.label() + ": " + e.what());
            }
        }
    }
    if (out.ranked.empty()) throw NumericalError("model selection: every candidate failed to fit");
    std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const SelectionEntry& a, const SelectionEntry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.spec.p + a.spec.q != b.spec.p + b.spec.q) return a.spec.p + a.spec.q < b.spec.p + b.spec.q;
        return a.spec.p < b.spec.p;
    });
    return out;
}

}  // namespace fxcast
