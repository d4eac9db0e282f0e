#pragma once

#include <fxcast/detail/moments.hpp>
#include <fxcast/series.hpp>
#include <fxcast/stat_tests/normality.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace fxcast {

struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    double mode = 0.0;
    double max = 0.0;
    double min = 0.0;
    double std_dev = 0.0;   // n-1 divisor
    double skewness = 0.0;  // m3 / m2^1.5, population moments
    double kurtosis = 0.0;  // m4 / m2^2, raw (normal = 3)
    double jb_stat = 0.0;
    double jb_prob = 0.0;
};

inline double median(std::span<const double> x) {
    if (x.empty()) throw DataError("median of an empty sample");
    std::vector<double> v(x.begin(), x.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    if (v.size() % 2 == 1) return v[mid];
    const double upper = v[mid];
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

/// Most frequent value after rounding to 3 decimals; ties go to the value nearest zero
/// (then the smaller one).
inline double rounded_mode(std::span<const double> x) {
    if (x.empty()) throw DataError("mode of an empty sample");
    std::map<long long, std::size_t> counts;
    for (double v : x) ++counts[std::llround(v * 1000.0)];
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second > best->second ||
            (it->second == best->second && std::llabs(it->first) < std::llabs(best->first)))
            best = it;
    }
    return static_cast<double>(best->first) / 1000.0;
}

inline DescriptiveStats describe(std::span<const double> x) {
    if (x.size() < 4) throw DataError("describe needs at least 4 observations");
    const auto m = detail::central_moments(x);
    if (detail::is_degenerate(m)) throw DegenerateSeries("describe on a constant sample");
    DescriptiveStats s;
    s.mean = m.mean;
    s.median = median(x);
    s.mode = rounded_mode(x);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    s.min = *lo;
    s.max = *hi;
    s.std_dev = std::sqrt(m.sample_variance());
    s.skewness = m.skewness();
    s.kurtosis = m.kurtosis();
    const auto jb = jarque_bera(x);
    s.jb_stat = jb.statistic;
    s.jb_prob = *jb.p_value;
    return s;
}

inline DescriptiveStats describe(const ReturnSeries& series) { return describe(series.values()); }

struct FrequencyReport {
    std::size_t count_zero = 0;
    std::size_t count_negative = 0;
    std::size_t count_positive = 0;
    double percent_zero = 0.0;
    double percent_negative = 0.0;
    double percent_positive = 0.0;
    std::size_t max_consecutive_negative_days = 0;
    std::size_t max_consecutive_positive_days = 0;
    std::size_t max_days_increasing = 0;  // strict; a tie ends the run
    std::size_t max_days_decreasing = 0;

    std::size_t total() const { return count_zero + count_negative + count_positive; }
};

inline FrequencyReport frequency_discrimination(std::span<const double> x) {
    if (x.empty()) throw DataError("frequency discrimination of an empty series");
    FrequencyReport f;
    std::size_t neg_run = 0, pos_run = 0, up_run = 1, down_run = 1;
    f.max_days_increasing = 1;
    f.max_days_decreasing = 1;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double v = x[t];
        if (v == 0.0) ++f.count_zero;
        else if (v < 0.0) ++f.count_negative;
        else ++f.count_positive;

        neg_run = v < 0.0 ? neg_run + 1 : 0;
        pos_run = v > 0.0 ? pos_run + 1 : 0;
        f.max_consecutive_negative_days = std::max(f.max_consecutive_negative_days, neg_run);
        f.max_consecutive_positive_days = std::max(f.max_consecutive_positive_days, pos_run);

        if (t > 0) {
            up_run = x[t] > x[t - 1] ? up_run + 1 : 1;
            down_run = x[t] < x[t - 1] ? down_run + 1 : 1;
            f.max_days_increasing = std::max(f.max_days_increasing, up_run);
            f.max_days_decreasing = std::max(f.max_days_decreasing, down_run);
        }
    }
    const auto n = static_cast<double>(x.size());
    f.percent_zero = 100.0 * static_cast<double>(f.count_zero) / n;
    f.percent_negative = 100.0 * static_cast<double>(f.count_negative) / n;
    f.percent_positive = 100.0 * static_cast<double>(f.count_positive) / n;
    return f;
}

/// Pearson correlation of two equal-length samples.
inline double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw InvalidArgument("correlation needs two equal-length samples");
    const double ma = detail::mean(a), mb = detail::mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) throw DegenerateSeries("correlation with a zero-variance vector");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Corr(R_t^2, R_{t-1}); a negative value would indicate a leverage effect.
inline double leverage_correlation(std::span<const double> x) {
    if (x.size() < 3) throw DataError("leverage correlation needs at least 3 observations");
    std::vector<double> squared(x.size() - 1), lagged(x.size() - 1);
    for (std::size_t t = 1; t < x.size(); ++t) {
        squared[t - 1] = x[t] * x[t];
        lagged[t - 1] = x[t - 1];
    }
    return pearson(squared, lagged);
}

}  // namespace fxcast
