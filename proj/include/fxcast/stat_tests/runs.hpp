#pragma once

#include <fxcast/descriptive.hpp>
#include <fxcast/distributions.hpp>

#include <cmath>
#include <span>

namespace fxcast {

enum class RunsThreshold { mean, median, mode };

inline const char* to_string(RunsThreshold t) {
    switch (t) {
        case RunsThreshold::mean: return "mean";
        case RunsThreshold::median: return "median";
        case RunsThreshold::mode: return "mode";
    }
    return "?";
}

/// How observations equal to the threshold are classified.
enum class RunsTies {
    below,  // x <= threshold is one group, x > threshold the other
    drop,   // exact ties are removed before counting
};

struct RunsResult {
    RunsThreshold threshold_kind = RunsThreshold::mean;
    double threshold = 0.0;
    std::size_t n_above = 0;
    std::size_t n_below = 0;
    std::size_t observed_runs = 0;
    double expected_runs = 0.0;
    double std_dev = 0.0;
    double z_stat = 0.0;
    double p_value = 1.0;  // two-sided, normal approximation
};

/// Wald-Wolfowitz runs test around a location threshold.
inline RunsResult runs_test(std::span<const double> x, RunsThreshold kind, RunsTies ties = RunsTies::below) {
    if (x.empty()) throw DataError("runs test on an empty series");
    RunsResult r;
    r.threshold_kind = kind;
    switch (kind) {
        case RunsThreshold::mean: r.threshold = detail::mean(x); break;
        case RunsThreshold::median: r.threshold = median(x); break;
        case RunsThreshold::mode: r.threshold = rounded_mode(x); break;
    }
    int previous = 0;  // +1 above, -1 below
    for (double v : x) {
        if (ties == RunsTies::drop && v == r.threshold) continue;
        const int side = v > r.threshold ? 1 : -1;
        (side > 0 ? r.n_above : r.n_below)++;
        if (side != previous) ++r.observed_runs;
        previous = side;
    }
    if (r.n_above == 0 || r.n_below == 0)
        throw DataError("runs test: all observations fall on one side of the threshold");
    const double n1 = static_cast<double>(r.n_above), n2 = static_cast<double>(r.n_below);
    const double n = n1 + n2;
    r.expected_runs = 2.0 * n1 * n2 / n + 1.0;
    const double var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n) / (n * n * (n - 1.0));
    r.std_dev = std::sqrt(var);
    if (!(r.std_dev > 0.0)) throw DegenerateSeries("runs test variance is zero");
    r.z_stat = (static_cast<double>(r.observed_runs) - r.expected_runs) / r.std_dev;
    r.p_value = dist::normal_two_sided(r.z_stat);
    return r;
}

}  // namespace fxcast
