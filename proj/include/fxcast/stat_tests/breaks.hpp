#pragma once

#include <fxcast/detail/long_run_variance.hpp>
#include <fxcast/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fxcast {

// Mean-shift model y_t = mu_j + u_t in regime j. A break index k marks the first
// observation of a new regime, so regimes are half-open ranges [k_{j-1}, k_j).

struct BreakTestRow {
    std::size_t breaks_under_null = 0;  // l in "l vs. l+1"
    double f_stat = 0.0;
    double scaled_f_stat = 0.0;
    double critical_value = 0.0;
    bool reject = false;
    std::optional<std::size_t> candidate_index;  // where the extra break would go

    std::string label() const {
        return std::to_string(breaks_under_null) + " vs. " + std::to_string(breaks_under_null + 1);
    }
};

struct BreakResult {
    std::vector<BreakTestRow> tests;
    std::size_t selected_break_count = 0;
    /// Zero-based start of each new regime, from the global SSR minimizer under the selected count.
    std::vector<std::size_t> break_indices;
    std::size_t min_segment = 0;
};

struct BaiPerronOptions {
    std::size_t max_breaks = 5;
    double trimming = 0.15;
    int bandwidth = -1;  // -1: Newey-West fixed rule per tested segment
    /// 5% sup-F(l+1|l) critical values indexed by l. Empty: built-in table (trimming 0.15 only).
    std::vector<double> critical_values;
};

namespace detail {

// Bai & Perron (2003), q = 1 breaking regressor, trimming 0.15, 5% level.
inline constexpr std::array<double, 9> kSeqSupF15{8.58, 10.13, 11.14, 11.83, 12.25, 12.66, 13.08, 13.40, 13.67};

/// O(1) sum of squared deviations from the mean over [begin, end).
class SegmentCost {
public:
    explicit SegmentCost(std::span<const double> y) : sum_(y.size() + 1, 0.0), sq_(y.size() + 1, 0.0) {
        // shift by the overall mean to limit cancellation
        double c = 0.0;
        for (double v : y) c += v;
        c /= static_cast<double>(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double v = y[i] - c;
            sum_[i + 1] = sum_[i] + v;
            sq_[i + 1] = sq_[i] + v * v;
        }
    }

    double operator()(std::size_t begin, std::size_t end) const {
        const double s = sum_[end] - sum_[begin];
        const double ssr = sq_[end] - sq_[begin] - s * s / static_cast<double>(end - begin);
        return std::max(ssr, 0.0);
    }

private:
    std::vector<double> sum_, sq_;
};

}  // namespace detail

struct Partition {
    double ssr = 0.0;
    std::vector<std::size_t> breaks;
};

/// Global SSR minimizer with exactly `m` breaks and every regime at least `h` long (dynamic programming).
inline Partition optimal_partition(std::span<const double> y, std::size_t m, std::size_t h) {
    const std::size_t n = y.size();
    if (h < 1 || (m + 1) * h > n) throw DataError("series too short for the requested breaks and trimming");
    const detail::SegmentCost cost(y);
    const double inf = std::numeric_limits<double>::infinity();
    // best[j][e]: min SSR of y[0, e) split into j+1 regimes; arg[j][e]: start of the last regime
    std::vector<std::vector<double>> best(m + 1, std::vector<double>(n + 1, inf));
    std::vector<std::vector<std::size_t>> arg(m + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t e = h; e <= n; ++e) best[0][e] = cost(0, e);
    for (std::size_t j = 1; j <= m; ++j) {
        for (std::size_t e = (j + 1) * h; e <= n; ++e) {
            for (std::size_t k = j * h; k + h <= e; ++k) {
                const double v = best[j - 1][k] + cost(k, e);
                if (v < best[j][e]) {
                    best[j][e] = v;
                    arg[j][e] = k;
                }
            }
        }
    }
    Partition p;
    p.ssr = best[m][n];
    p.breaks.resize(m);
    std::size_t e = n;
    for (std::size_t j = m; j >= 1; --j) {
        e = arg[j][e];
        p.breaks[j - 1] = e;
    }
    return p;
}

namespace detail {

/// HAC Wald statistic for equal means on either side of `k` within [begin, end).
inline double mean_shift_wald(std::span<const double> y, std::size_t begin, std::size_t k, std::size_t end, int bw) {
    const double n1 = static_cast<double>(k - begin), n2 = static_cast<double>(end - k);
    double mu1 = 0.0, mu2 = 0.0;
    for (std::size_t t = begin; t < k; ++t) mu1 += y[t];
    for (std::size_t t = k; t < end; ++t) mu2 += y[t];
    mu1 /= n1;
    mu2 /= n2;
    auto resid = [&](std::size_t t) { return y[t] - (t < k ? mu1 : mu2); };
    // Omega = sum_t z_t z_t' + sum_j w_j (Gamma_j + Gamma_j'), z_t = e_t (1{t<k}, 1{t>=k})
    double o11 = 0.0, o22 = 0.0, o12 = 0.0;
    for (std::size_t t = begin; t < end; ++t) {
        const double e = resid(t);
        (t < k ? o11 : o22) += e * e;
    }
    for (int j = 1; j <= bw; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (bw + 1.0);
        double g11 = 0.0, g22 = 0.0, g21 = 0.0;
        for (std::size_t t = begin + static_cast<std::size_t>(j); t < end; ++t) {
            const std::size_t s = t - static_cast<std::size_t>(j);
            const double p = resid(t) * resid(s);
            if (t < k) g11 += p;
            else if (s >= k) g22 += p;
            else g21 += p;  // t in regime 2, s in regime 1
        }
        o11 += 2.0 * w * g11;
        o22 += 2.0 * w * g22;
        o12 += w * g21;
    }
    const double v11 = o11 / (n1 * n1), v22 = o22 / (n2 * n2), v12 = o12 / (n1 * n2);
    const double var = v11 + v22 - 2.0 * v12;
    if (!(var > 0.0)) return 0.0;
    const double diff = mu1 - mu2;
    return diff * diff / var;
}

struct SupF {
    double value = 0.0;
    std::optional<std::size_t> at;
};

inline SupF sup_f_in_segment(std::span<const double> y, std::size_t begin, std::size_t end, std::size_t h, int bw_opt) {
    SupF best;
    if (end - begin < 2 * h) return best;
    const int bw = bw_opt >= 0 ? bw_opt : newey_west_bandwidth(end - begin);
    for (std::size_t k = begin + h; k + h <= end; ++k) {
        const double f = mean_shift_wald(y, begin, k, end, bw);
        if (!best.at || f > best.value) {
            best.value = f;
            best.at = k;
        }
    }
    return best;
}

}  // namespace detail

/// Sequential sup-F(l+1|l) test for mean shifts. Under l breaks the regimes come from the
/// global SSR minimizer; testing stops at the first non-rejection or at max_breaks.
inline BreakResult bai_perron(std::span<const double> y, const BaiPerronOptions& opt = {}) {
    if (opt.max_breaks < 1) throw InvalidArgument("max_breaks must be at least 1");
    if (!(opt.trimming > 0.0 && opt.trimming < 0.5)) throw InvalidArgument("trimming must lie in (0, 0.5)");
    const std::size_t n = y.size();
    const auto h = static_cast<std::size_t>(std::floor(opt.trimming * static_cast<double>(n)));
    if (h < 2) throw DataError("series too short for the trimming window");
    std::vector<double> crit = opt.critical_values;
    if (crit.empty()) {
        if (std::abs(opt.trimming - 0.15) > 1e-9)
            throw InvalidArgument("built-in critical values cover trimming 0.15 only; supply critical_values");
        crit.assign(detail::kSeqSupF15.begin(), detail::kSeqSupF15.end());
    }

    BreakResult result;
    result.min_segment = h;
    std::vector<std::size_t> current;  // breaks under the null
    for (std::size_t l = 0; l < opt.max_breaks; ++l) {
        if (l >= crit.size()) break;
        if ((l + 2) * h > n) break;  // no room for another regime
        std::vector<std::size_t> bounds{0};
        bounds.insert(bounds.end(), current.begin(), current.end());
        bounds.push_back(n);
        detail::SupF best;
        for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
            const auto f = detail::sup_f_in_segment(y, bounds[s], bounds[s + 1], h, opt.bandwidth);
            if (f.at && (!best.at || f.value > best.value)) best = f;
        }
        if (!best.at) break;
        BreakTestRow row;
        row.breaks_under_null = l;
        row.f_stat = best.value;      // one restriction per test: F equals the Wald statistic
        row.scaled_f_stat = best.value;  // q = 1 breaking regressor
        row.critical_value = crit[l];
        row.reject = row.scaled_f_stat > row.critical_value;
        row.candidate_index = best.at;
        result.tests.push_back(row);
        if (!row.reject) break;
        current = optimal_partition(y, l + 1, h).breaks;
    }
    result.break_indices = current;
    result.selected_break_count = current.size();
    return result;
}

}  // namespace fxcast
