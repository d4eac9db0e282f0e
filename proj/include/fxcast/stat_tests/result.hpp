#pragma once

#include <optional>
#include <string>

namespace fxcast {

enum class Deterministic { none, constant, constant_trend };

inline const char* to_string(Deterministic d) {
    switch (d) {
        case Deterministic::none: return "none";
        case Deterministic::constant: return "constant";
        case Deterministic::constant_trend: return "constant_trend";
    }
    return "?";
}

/// Which tail rejects the null.
enum class RejectionTail { lower, upper };

struct TestSpec {
    Deterministic deterministic = Deterministic::none;
    int lags = 0;        // augmentation lags (ADF) or auxiliary lags (ARCH)
    int bandwidth = -1;  // Bartlett truncation lag, -1 when unused
};

struct TestResult {
    double statistic = 0.0;
    double critical_value = 0.0;  // 5% unless stated
    std::optional<double> p_value;
    bool p_value_approximate = false;
    bool reject_null = false;
    RejectionTail tail = RejectionTail::upper;
    TestSpec spec;
    /// Secondary statistic where a test reports two forms (ARCH-LM: F form).
    std::optional<double> alt_statistic;
    std::optional<double> alt_p_value;
};

inline bool rejects(double statistic, double critical, RejectionTail tail) {
    return tail == RejectionTail::lower ? statistic < critical : statistic > critical;
}

}  // namespace fxcast
