#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>

namespace fxcast::dist {

// Upper-tail probabilities, clamped into [0, 1].

inline double chi2_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return std::clamp(boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), x)), 0.0, 1.0);
}

inline double f_sf(double x, double dof1, double dof2) {
    if (x <= 0.0) return 1.0;
    return std::clamp(boost::math::cdf(boost::math::complement(boost::math::fisher_f(dof1, dof2), x)), 0.0, 1.0);
}

inline double normal_cdf(double z) { return boost::math::cdf(boost::math::normal(), z); }

inline double normal_sf(double z) { return boost::math::cdf(boost::math::complement(boost::math::normal(), z)); }

inline double normal_two_sided(double z) { return std::clamp(2.0 * normal_sf(std::abs(z)), 0.0, 1.0); }

inline double t_two_sided(double t, double dof) {
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(boost::math::students_t(dof), std::abs(t))), 0.0,
                      1.0);
}

}  // namespace fxcast::dist
