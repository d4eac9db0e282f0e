#pragma once

#include <fxcast/arima.hpp>
#include <fxcast/evaluation.hpp>
#include <fxcast/smoothing.hpp>
#include <fxcast/stat_tests.hpp>

#include <array>
#include <utility>

// Stable string tokens for enums that appear in configuration files and reports.

namespace fxcast {

template <class E, std::size_t N>
using EnumTable = std::array<std::pair<E, const char*>, N>;

inline constexpr EnumTable<Deterministic, 3> enum_names(Deterministic) {
    return {{{Deterministic::none, "none"},
             {Deterministic::constant, "constant"},
             {Deterministic::constant_trend, "constant_trend"}}};
}

inline constexpr EnumTable<RejectionTail, 2> enum_names(RejectionTail) {
    return {{{RejectionTail::lower, "lower"}, {RejectionTail::upper, "upper"}}};
}

inline constexpr EnumTable<RunsThreshold, 3> enum_names(RunsThreshold) {
    return {{{RunsThreshold::mean, "mean"}, {RunsThreshold::median, "median"}, {RunsThreshold::mode, "mode"}}};
}

inline constexpr EnumTable<RunsTies, 2> enum_names(RunsTies) {
    return {{{RunsTies::below, "below"}, {RunsTies::drop, "drop"}}};
}

inline constexpr EnumTable<LagRule, 2> enum_names(LagRule) {
    return {{{LagRule::aic, "aic"}, {LagRule::fixed, "fixed"}}};
}

inline constexpr EnumTable<Criterion, 3> enum_names(Criterion) {
    return {{{Criterion::aic, "aic"}, {Criterion::bic, "bic"}, {Criterion::hq, "hq"}}};
}

inline constexpr EnumTable<ForecastScheme, 2> enum_names(ForecastScheme) {
    return {{{ForecastScheme::static_multi_step, "static"}, {ForecastScheme::rolling_one_step, "rolling"}}};
}

inline constexpr EnumTable<SmoothingKind, 2> enum_names(SmoothingKind) {
    return {{{SmoothingKind::brown, "brown"}, {SmoothingKind::holt, "holt"}}};
}

inline constexpr EnumTable<SmoothingErrors, 2> enum_names(SmoothingErrors) {
    return {{{SmoothingErrors::all_periods, "all_periods"}, {SmoothingErrors::one_step_only, "one_step_only"}}};
}

inline constexpr EnumTable<Metric, 3> enum_names(Metric) {
    return {{{Metric::rmse, "rmse"}, {Metric::mae, "mae"}, {Metric::smape, "smape"}}};
}

/// Parses a token against an enum table; throws InvalidArgument listing the accepted tokens.
template <class E>
E parse_enum(const std::string& token, const char* what) {
    std::string accepted;
    for (const auto& [value, name] : enum_names(E{})) {
        if (token == name) return value;
        accepted += accepted.empty() ? name : std::string("|") + name;
    }
    throw InvalidArgument(std::string("unknown ") + what + " '" + token + "' (expected " + accepted + ")");
}

template <class E>
const char* enum_token(E value) {
    for (const auto& [v, name] : enum_names(value))
        if (v == value) return name;
    return "?";
}

}  // namespace fxcast
