#pragma once

#include <fxcast/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <span>
#include <vector>

namespace fxcast {

enum class SmoothingKind { brown, holt };

/// Which one-step errors enter the sum of squares.
enum class SmoothingErrors {
    /// Every t = 1..n. Before the recursions have history the prediction falls back to the
    /// initial level with zero trend, so Brown's t = 1 term is zero and Holt's t = 2 term is Y2 - Y1.
    all_periods,
    /// Only errors with a full history: t >= 2 (Brown), t >= 3 (Holt).
    one_step_only,
};

struct SmoothingFit {
    SmoothingKind kind = SmoothingKind::brown;
    double alpha = 0.0;
    std::optional<double> beta;
    std::vector<double> fitted;       // smoothed level Y^_t
    std::vector<double> trend_state;  // Holt's trend dY^_t (index 0 is zero: undefined at t = 1)
    double ssr = 0.0;
    std::size_t error_count = 0;
    double rmse = 0.0;
    /// False when Holt's beta is 0: alpha then only reflects the start-up trend.
    bool alpha_identified = true;
};

namespace detail {

inline void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace detail

/// Y^_1 = Y_1, Y^_t = alpha Y_t + (1 - alpha) Y^_{t-1}; one-step error e_t = Y_t - Y^_{t-1}.
inline SmoothingFit brown_filter(std::span<const double> y, double alpha,
                                 SmoothingErrors errors = SmoothingErrors::all_periods) {
    detail::check_unit(alpha, "alpha");
    if (y.size() < 2) throw DataError("Brown smoothing needs at least 2 observations");
    SmoothingFit f;
    f.kind = SmoothingKind::brown;
    f.alpha = alpha;
    f.fitted.resize(y.size());
    f.fitted[0] = y[0];
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double e = y[t] - f.fitted[t - 1];
        f.ssr += e * e;
        f.fitted[t] = alpha * y[t] + (1.0 - alpha) * f.fitted[t - 1];
    }
    f.error_count = errors == SmoothingErrors::all_periods ? y.size() : y.size() - 1;
    f.rmse = std::sqrt(f.ssr / static_cast<double>(f.error_count));
    return f;
}

/// Holt's linear trend: level Y^_t = alpha Y_t + (1 - alpha)(Y^_{t-1} + dY^_{t-1}) with Y^_1 = Y_1,
/// trend dY^_t = beta (Y^_t - Y^_{t-1}) + (1 - beta) dY^_{t-1} with dY^_2 = Y_2 - Y_1.
/// At t = 2 the level update uses a zero trend.
inline SmoothingFit holt_filter(std::span<const double> y, double alpha, double beta,
                                SmoothingErrors errors = SmoothingErrors::all_periods) {
    detail::check_unit(alpha, "alpha");
    detail::check_unit(beta, "beta");
    if (y.size() < 3) throw DataError("Holt smoothing needs at least 3 observations");
    SmoothingFit f;
    f.kind = SmoothingKind::holt;
    f.alpha = alpha;
    f.beta = beta;
    f.alpha_identified = beta != 0.0;
    const std::size_t n = y.size();
    f.fitted.resize(n);
    f.trend_state.assign(n, 0.0);
    f.fitted[0] = y[0];
    f.fitted[1] = alpha * y[1] + (1.0 - alpha) * f.fitted[0];
    f.trend_state[1] = y[1] - y[0];
    if (errors == SmoothingErrors::all_periods) {
        const double e2 = y[1] - f.fitted[0];
        f.ssr += e2 * e2;
    }
    for (std::size_t t = 2; t < n; ++t) {
        const double predicted = f.fitted[t - 1] + f.trend_state[t - 1];
        const double e = y[t] - predicted;
        f.ssr += e * e;
        f.fitted[t] = alpha * y[t] + (1.0 - alpha) * predicted;
        f.trend_state[t] = beta * (f.fitted[t] - f.fitted[t - 1]) + (1.0 - beta) * f.trend_state[t - 1];
    }
    f.error_count = errors == SmoothingErrors::all_periods ? n : n - 2;
    f.rmse = std::sqrt(f.ssr / static_cast<double>(f.error_count));
    return f;
}

struct SmoothingSearch {
    double step = 0.001;       // Brown grid; Holt's fine refinement step
    double coarse_step = 0.01; // Holt coarse grid
    SmoothingErrors errors = SmoothingErrors::all_periods;
};

namespace detail {

inline std::vector<double> unit_grid(double lo, double hi, double step) {
    std::vector<double> g;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) g.push_back(std::min(1.0, std::max(0.0, lo + static_cast<double>(i) * step)));
    if (g.empty() || g.back() < hi - 1e-12) g.push_back(hi);
    return g;
}

}  // namespace detail

/// In-sample RMSE minimizer over the alpha grid on [0, 1]; ties go to the smaller alpha.
inline SmoothingFit fit_brown(std::span<const double> y, const SmoothingSearch& search = {}) {
    if (y.size() < 3) throw DataError("smoothing fit needs at least 3 observations");
    double best_alpha = 0.0, best_ssr = std::numeric_limits<double>::infinity();
    for (double a : detail::unit_grid(0.0, 1.0, search.step)) {
        const double s = brown_filter(y, a, search.errors).ssr;
        if (s < best_ssr) {
            best_ssr = s;
            best_alpha = a;
        }
    }
    return brown_filter(y, best_alpha, search.errors);
}

/// Coarse (alpha, beta) grid then a fine grid around the coarse optimum; ties go to the
/// smaller alpha, then the smaller beta.
inline SmoothingFit fit_holt(std::span<const double> y, const SmoothingSearch& search = {}) {
    if (y.size() < 3) throw DataError("smoothing fit needs at least 3 observations");
    double best_a = 0.0, best_b = 0.0, best_ssr = std::numeric_limits<double>::infinity();
    auto scan = [&](const std::vector<double>& alphas, const std::vector<double>& betas) {
        for (double a : alphas)
            for (double b : betas) {
                const double s = holt_filter(y, a, b, search.errors).ssr;
                if (s < best_ssr || (s == best_ssr && (a < best_a || (a == best_a && b < best_b)))) {
                    best_ssr = s;
                    best_a = a;
                    best_b = b;
                }
            }
    };
    const auto coarse = detail::unit_grid(0.0, 1.0, search.coarse_step);
    scan(coarse, coarse);
    const double ca = best_a, cb = best_b;
    scan(detail::unit_grid(std::max(0.0, ca - search.coarse_step), std::min(1.0, ca + search.coarse_step), search.step),
         detail::unit_grid(std::max(0.0, cb - search.coarse_step), std::min(1.0, cb + search.coarse_step), search.step));
    return holt_filter(y, best_a, best_b, search.errors);
}

/// Brown: flat at the last level. Holt: last level plus h times the last trend.
inline std::vector<double> smoothing_forecast(const SmoothingFit& fit, std::size_t horizon) {
    if (horizon < 1) throw InvalidArgument("forecast horizon must be at least 1");
    if (fit.fitted.empty()) throw InvalidArgument("smoothing fit has no fitted path");
    const double level = fit.fitted.back();
    const double slope = fit.kind == SmoothingKind::holt ? fit.trend_state.back() : 0.0;
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h) out[h] = level + static_cast<double>(h + 1) * slope;
    return out;
}

}  // namespace fxcast
