#pragma once

#include <fxcast/error.hpp>

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fxcast {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Returns false on any malformation.
inline bool parse_iso_date(std::string_view text, Date& out) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    int parts[3] = {0, 0, 0};
    const std::size_t starts[3] = {0, 5, 8};
    const std::size_t lens[3] = {4, 2, 2};
    for (int i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < lens[i]; ++k) {
            const char c = text[starts[i] + k];
            if (c < '0' || c > '9') return false;
            parts[i] = parts[i] * 10 + (c - '0');
        }
    }
    const Date d{std::chrono::year{parts[0]}, std::chrono::month{static_cast<unsigned>(parts[1])},
                 std::chrono::day{static_cast<unsigned>(parts[2])}};
    if (!d.ok()) return false;
    out = d;
    return true;
}

inline std::string to_iso_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

/// Exchange-rate levels: strictly increasing dates, strictly positive values, at least two points.
class PriceSeries {
public:
    PriceSeries(std::vector<Date> dates, std::vector<double> values) : dates_(std::move(dates)), values_(std::move(values)) {
        if (dates_.size() != values_.size()) throw DataError("price series: dates and values differ in length");
        if (values_.size() < 2) throw DataError("price series needs at least 2 observations");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]) || values_[i] <= 0.0)
                throw DataError("price series: non-positive rate at " + to_iso_string(dates_[i]));
            if (i > 0 && !(dates_[i - 1] < dates_[i]))
                throw DataError("price series: dates not strictly increasing at " + to_iso_string(dates_[i]));
        }
    }

    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
};

/// Percent returns (or any transform of them). All values finite; dates optional.
class ReturnSeries {
public:
    ReturnSeries() = default;

    explicit ReturnSeries(std::vector<double> values) : values_(std::move(values)) { check(); }

    ReturnSeries(std::vector<Date> dates, std::vector<double> values) : dates_(std::move(dates)), values_(std::move(values)) {
        if (!dates_.empty() && dates_.size() != values_.size())
            throw DataError("return series: dates and values differ in length");
        check();
    }

    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    bool has_dates() const noexcept { return !dates_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Contiguous sub-range [first, first + count).
    ReturnSeries slice(std::size_t first, std::size_t count) const {
        if (first + count > values_.size()) throw InvalidArgument("slice out of range");
        std::vector<double> v(values_.begin() + first, values_.begin() + first + count);
        if (dates_.empty()) return ReturnSeries(std::move(v));
        std::vector<Date> d(dates_.begin() + first, dates_.begin() + first + count);
        return ReturnSeries(std::move(d), std::move(v));
    }

    friend bool operator==(const ReturnSeries&, const ReturnSeries&) = default;

private:
    void check() const {
        for (double v : values_)
            if (!std::isfinite(v)) throw DataError("return series contains a non-finite value");
    }

    std::vector<Date> dates_;
    std::vector<double> values_;
};

/// (rate[t] - rate[t-1]) / rate[t-1] * 100, dated at t.
inline ReturnSeries compute_returns(const PriceSeries& prices) {
    const auto rate = prices.values();
    const auto when = prices.dates();
    if (rate.size() < 2) throw DataError("returns need at least 2 prices");
    std::vector<double> values(rate.size() - 1);
    std::vector<Date> dates(when.begin() + 1, when.end());
    for (std::size_t t = 1; t < rate.size(); ++t) values[t - 1] = (rate[t] - rate[t - 1]) / rate[t - 1] * 100.0;
    return ReturnSeries(std::move(dates), std::move(values));
}

/// Applies (1 - L) `d` times; the first `d` dates are dropped.
inline ReturnSeries difference(const ReturnSeries& series, std::size_t d) {
    if (d >= series.size() && d > 0) throw InvalidArgument("differencing order must be below series length");
    std::vector<double> v(series.values().begin(), series.values().end());
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t t = v.size() - 1; t > 0; --t) v[t] -= v[t - 1];
        v.erase(v.begin());
    }
    if (!series.has_dates()) return ReturnSeries(std::move(v));
    std::vector<Date> dates(series.dates().begin() + static_cast<std::ptrdiff_t>(d), series.dates().end());
    return ReturnSeries(std::move(dates), std::move(v));
}

/// Inverts `difference`: given the first `d` values of the original series
/// (the anchors) and the d-th differences, rebuilds the original values.
inline std::vector<double> integrate(std::span<const double> anchors, std::span<const double> diffs) {
    const std::size_t d = anchors.size();
    if (d == 0) return {diffs.begin(), diffs.end()};
    // the first d-1 first differences anchor the next level down
    std::vector<double> lower_anchors(d - 1);
    for (std::size_t i = 1; i < d; ++i) lower_anchors[i - 1] = anchors[i] - anchors[i - 1];
    std::vector<double> delta_tail = integrate(lower_anchors, diffs);  // Δx[1..]
    std::vector<double> out(anchors.begin(), anchors.end());
    out.reserve(d + diffs.size());
    for (std::size_t i = d - 1; i < delta_tail.size(); ++i) out.push_back(out.back() + delta_tail[i]);
    return out;
}

struct SplitSpec {
    double train_fraction = 0.85;
};

struct TrainTestSplit {
    ReturnSeries train;
    ReturnSeries test;
};

/// Splits at an explicit train length; both segments must be non-empty.
inline TrainTestSplit split_at(const ReturnSeries& series, std::size_t train_length) {
    if (train_length < 1 || train_length >= series.size())
        throw InvalidArgument("split leaves an empty train or test segment");
    return {series.slice(0, train_length), series.slice(train_length, series.size() - train_length)};
}

/// Train length is floor(train_fraction * N).
inline TrainTestSplit split(const ReturnSeries& series, SplitSpec spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw InvalidArgument("train fraction must lie in (0, 1)");
    const auto n_train = static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(series.size())));
    return split_at(series, n_train);
}

}  // namespace fxcast
