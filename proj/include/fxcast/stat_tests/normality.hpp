#pragma once

#include <fxcast/detail/moments.hpp>
#include <fxcast/distributions.hpp>
#include <fxcast/stat_tests/result.hpp>

#include <boost/math/distributions/chi_squared.hpp>

#include <span>

namespace fxcast {

/// Jarque-Bera statistic from sample size, skewness and (raw) kurtosis.
inline double jarque_bera_statistic(double n, double skewness, double kurtosis) {
    const double excess = kurtosis - 3.0;
    return n / 6.0 * (skewness * skewness + excess * excess / 4.0);
}

inline TestResult jarque_bera(std::span<const double> x, double level = 0.05) {
    if (x.size() < 4) throw DataError("Jarque-Bera needs at least 4 observations");
    const auto m = detail::central_moments(x);
    if (detail::is_degenerate(m)) throw DegenerateSeries("Jarque-Bera on a constant sample");
    TestResult r;
    r.statistic = jarque_bera_statistic(static_cast<double>(m.n), m.skewness(), m.kurtosis());
    r.critical_value = boost::math::quantile(boost::math::complement(boost::math::chi_squared(2.0), level));
    r.p_value = dist::chi2_sf(r.statistic, 2.0);
    r.tail = RejectionTail::upper;
    r.reject_null = rejects(r.statistic, r.critical_value, r.tail);
    return r;
}

}  // namespace fxcast
