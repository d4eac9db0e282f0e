#pragma once

#include <fxcast/arima.hpp>
#include <fxcast/smoothing.hpp>
#include <fxcast/stat_tests.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace fxcast::mc {

/// SplitMix64 finalizer; used to derive independent sub-seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t task_seed(std::uint64_t master, const std::string& task) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : task) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(master ^ h);
}

inline std::uint64_t replication_seed(std::uint64_t task, std::size_t rep) {
    return splitmix64(task + 0x632be59bd9b4e019ULL * (static_cast<std::uint64_t>(rep) + 1));
}

using Rng = std::mt19937_64;

inline std::vector<double> gaussian_noise(Rng& rng, std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> z(0.0, sd);
    std::vector<double> e(n);
    for (auto& v : e) v = z(rng);
    return e;
}

inline std::vector<double> random_walk(Rng& rng, std::size_t n) {
    auto e = gaussian_noise(rng, n);
    for (std::size_t t = 1; t < n; ++t) e[t] += e[t - 1];
    return e;
}

/// y_t = c + phi y_{t-1} + e_t + theta e_{t-1}, started from a 200-step burn-in.
inline std::vector<double> arma11(Rng& rng, std::size_t n, double phi, double theta, double c = 0.0) {
    const std::size_t burn = 200;
    const auto e = gaussian_noise(rng, n + burn);
    std::vector<double> y(n + burn, 0.0);
    for (std::size_t t = 1; t < y.size(); ++t) y[t] = c + phi * y[t - 1] + e[t] + theta * e[t - 1];
    return {y.begin() + static_cast<std::ptrdiff_t>(burn), y.end()};
}

/// e_t = sqrt(omega + a1 e_{t-1}^2) z_t.
inline std::vector<double> arch1(Rng& rng, std::size_t n, double omega, double a1) {
    const std::size_t burn = 200;
    const auto z = gaussian_noise(rng, n + burn);
    std::vector<double> e(n + burn, 0.0);
    for (std::size_t t = 1; t < e.size(); ++t) e[t] = std::sqrt(omega + a1 * e[t - 1] * e[t - 1]) * z[t];
    return {e.begin() + static_cast<std::ptrdiff_t>(burn), e.end()};
}

/// Simple exponential smoothing data: y_t = l_{t-1} + e_t, l_t = l_{t-1} + alpha e_t.
inline std::vector<double> ses_process(Rng& rng, std::size_t n, double alpha) {
    const auto e = gaussian_noise(rng, n);
    std::vector<double> y(n);
    double level = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        y[t] = level + e[t];
        level += alpha * e[t];
    }
    return y;
}

/// Runs `body(rep, rng)` for rep in [0, reps) across hardware threads. Each replication owns its
/// generator, seeded from (task, rep), so results do not depend on scheduling.
template <class T>
std::vector<T> replicate(std::uint64_t task, std::size_t reps, const std::function<T(std::size_t, Rng&)>& body,
                         unsigned threads = 0) {
    std::vector<T> out(reps);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(reps, 1)));
    auto worker = [&](unsigned id) {
        for (std::size_t r = id; r < reps; r += threads) {
            Rng rng(replication_seed(task, r));
            out[r] = body(r, rng);
        }
    };
    if (threads == 1) {
        worker(0);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
    return out;
}

struct SuiteResult {
    std::string name;
    std::string measure;  // what `value` is
    double value = 0.0;
    double lower = 0.0;  // pass band [lower, upper]
    double upper = 0.0;
    std::size_t replications = 0;
    std::size_t length = 0;
    std::size_t failures = 0;  // replications that raised an error and were excluded
    double seconds = 0.0;

    bool passed() const { return value >= lower && value <= upper; }
};

struct Settings {
    std::uint64_t seed = 20221213;
    std::size_t replications = 1000;
    std::size_t length = 500;
    unsigned threads = 0;
};

namespace detail {

/// Share of replications for which `flag` was set; errors count as failures and are excluded.
inline SuiteResult rate_suite(const std::string& name, const std::string& measure, const Settings& s, double lower,
                              double upper, const std::function<bool(Rng&)>& flag) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto hits = replicate<int>(task_seed(s.seed, name), s.replications, [&](std::size_t, Rng& rng) {
        try {
            return flag(rng) ? 1 : 0;
        } catch (const Error&) {
            return -1;
        }
    }, s.threads);
    SuiteResult r{name, measure, 0.0, lower, upper, s.replications, s.length};
    std::size_t ok = 0, yes = 0;
    for (int h : hits) {
        if (h < 0) ++r.failures;
        else {
            ++ok;
            yes += static_cast<std::size_t>(h);
        }
    }
    r.value = ok ? static_cast<double>(yes) / static_cast<double>(ok) : 0.0;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Mean of a per-replication estimate, reported as the absolute gap to `truth`.
inline SuiteResult recovery_suite(const std::string& name, const std::string& measure, const Settings& s,
                                  std::size_t reps, double truth, double tolerance,
                                  const std::function<double(Rng&)>& estimate) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto est = replicate<double>(task_seed(s.seed, name), reps, [&](std::size_t, Rng& rng) {
        try {
            return estimate(rng);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }, s.threads);
    SuiteResult r{name, measure, 0.0, 0.0, tolerance, reps, 0};
    double sum = 0.0;
    std::size_t ok = 0;
    for (double v : est) {
        if (std::isnan(v)) ++r.failures;
        else {
            sum += v;
            ++ok;
        }
    }
    r.value = ok ? std::abs(sum / static_cast<double>(ok) - truth) : std::numeric_limits<double>::infinity();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace detail

// Size suites: rejection rate under the null, target 5% +- 2 percentage points.

inline SuiteResult adf_size(const Settings& s) {
    return detail::rate_suite("adf-size", "rejection rate, Gaussian random walk", s, 0.03, 0.07, [&](Rng& rng) {
        return adf_test(random_walk(rng, s.length)).reject_null;
    });
}

inline SuiteResult kpss_size(const Settings& s) {
    return detail::rate_suite("kpss-size", "rejection rate, Gaussian white noise", s, 0.03, 0.07, [&](Rng& rng) {
        return kpss_test(gaussian_noise(rng, s.length)).reject_null;
    });
}

inline SuiteResult arch_size(const Settings& s) {
    return detail::rate_suite("arch-size", "rejection rate, iid Gaussian residuals", s, 0.03, 0.07, [&](Rng& rng) {
        return arch_lm(gaussian_noise(rng, s.length), 1).reject_null;
    });
}

inline SuiteResult bai_perron_size(const Settings& s) {
    return detail::rate_suite("bai-perron-size", "share selecting zero breaks, white noise", s, 0.93, 1.0, [&](Rng& rng) {
        return bai_perron(gaussian_noise(rng, s.length)).selected_break_count == 0;
    });
}

// Power and recovery suites.

inline SuiteResult adf_power(const Settings& s) {
    return detail::rate_suite("adf-power", "rejection rate, Gaussian white noise", s, 0.99, 1.0, [&](Rng& rng) {
        return adf_test(gaussian_noise(rng, s.length)).reject_null;
    });
}

inline SuiteResult arch_power(const Settings& s) {
    return detail::rate_suite("arch-power", "rejection rate, ARCH(1) with a1 = 0.5", s, 0.90, 1.0, [&](Rng& rng) {
        return arch_lm(arch1(rng, s.length, 1.0, 0.5), 1).reject_null;
    });
}

inline SuiteResult bai_perron_location(const Settings& s) {
    return detail::rate_suite("bai-perron-location", "share locating a +10 sd shift within 3 observations", s, 0.95, 1.0,
                              [&](Rng& rng) {
                                  auto y = gaussian_noise(rng, s.length);
                                  const auto at = static_cast<std::size_t>(0.3 * static_cast<double>(s.length));
                                  for (std::size_t t = at; t < y.size(); ++t) y[t] += 10.0;
                                  const auto res = bai_perron(y);
                                  if (res.selected_break_count != 1) return false;
                                  const auto found = static_cast<long>(res.break_indices.front());
                                  return std::labs(found - static_cast<long>(at)) <= 3;
                              });
}

inline SuiteResult arma_phi_recovery(const Settings& s) {
    return detail::recovery_suite("arma11-phi", "|mean phi - 0.5|, ARMA(1,1), T = 2000", s, 100, 0.5, 0.05, [](Rng& rng) {
        return fit_arima(arma11(rng, 2000, 0.5, 0.3), {1, 0, 1, false}).model.ar[0];
    });
}

inline SuiteResult arma_theta_recovery(const Settings& s) {
    return detail::recovery_suite("arma11-theta", "|mean theta - 0.3|, ARMA(1,1), T = 2000", s, 100, 0.3, 0.05,
                                  [](Rng& rng) {
                                      return fit_arima(arma11(rng, 2000, 0.5, 0.3), {1, 0, 1, false}).model.ma[0];
                                  });
}

inline SuiteResult ar1_recovery(const Settings& s) {
    return detail::recovery_suite("ar1-phi", "|mean phi - 0.5|, AR(1) with constant, T = 2000", s, 100, 0.5, 0.05,
                                  [](Rng& rng) {
                                      return fit_arima(arma11(rng, 2000, 0.5, 0.0, 0.2), {1, 0, 0, true}).model.ar[0];
                                  });
}

inline SuiteResult ses_recovery(const Settings& s) {
    return detail::recovery_suite("ses-alpha", "|mean alpha - 0.3|, SES process, T = 2000", s, 100, 0.3, 0.05,
                                  [](Rng& rng) { return fit_brown(ses_process(rng, 2000, 0.3)).alpha; });
}

inline SuiteResult pp_adf_agreement(const Settings& s) {
    Settings t = s;
    t.length = 1000;
    t.replications = std::min<std::size_t>(s.replications, 200);
    return detail::rate_suite("pp-adf-agreement", "share with |PP - ADF| < 0.5, iid, T = 1000", t, 0.90, 1.0,
                              [&](Rng& rng) {
                                  const auto y = gaussian_noise(rng, t.length);
                                  AdfOptions a;
                                  a.lag_rule = LagRule::fixed;
                                  a.fixed_lag = 0;
                                  return std::abs(adf_test(y, a).statistic - pp_test(y, {Deterministic::constant}).statistic) <
                                         0.5;
                              });
}

inline SuiteResult bic_selection(const Settings& s) {
    Settings t = s;
    t.length = 2000;
    t.replications = 100;
    return detail::rate_suite("bic-selection", "share choosing ARMA(1,1) by BIC over p, q in [1, 2]", t, 0.5, 1.0,
                              [&](Rng& rng) {
                                  const auto y = arma11(rng, t.length, 0.5, 0.3);
                                  const auto sel = select_arima(y, {1, 2}, {1, 2}, 0, Criterion::bic, false);
                                  return sel.ranked.front().spec.p == 1 && sel.ranked.front().spec.q == 1;
                              });
}

struct Suite {
    std::string name;
    std::function<SuiteResult(const Settings&)> run;
    bool in_default_set = true;
};

inline const std::vector<Suite>& suites() {
    static const std::vector<Suite> all{
        {"adf-size", adf_size},
        {"kpss-size", kpss_size},
        {"arch-size", arch_size},
        {"bai-perron-size", bai_perron_size},
        {"adf-power", adf_power},
        {"bai-perron-location", bai_perron_location},
        {"arma11-phi", arma_phi_recovery},
        {"arma11-theta", arma_theta_recovery},
        {"ses-alpha", ses_recovery},
        {"arch-power", arch_power, false},
        {"ar1-phi", ar1_recovery, false},
        {"pp-adf-agreement", pp_adf_agreement, false},
        {"bic-selection", bic_selection, false},
    };
    return all;
}

inline const Suite& find_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return s;
    throw InvalidArgument("unknown Monte Carlo suite '" + name + "'");
}

}  // namespace fxcast::mc
