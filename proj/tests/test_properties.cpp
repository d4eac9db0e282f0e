// Randomized property checks. Built as a separate binary so they can run on their own.
#include "support.hpp"

#include <fxcast/evaluation.hpp>
#include <fxcast/smoothing.hpp>
#include <fxcast/stat_tests.hpp>

#include <gtest/gtest.h>

using namespace fxcast;

namespace {

constexpr int kCases = 1000;

std::vector<double> mixed_sample(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::bernoulli_distribution zero(0.1);
    std::vector<double> v(n);
    for (auto& x : v) x = zero(rng) ? 0.0 : u(rng);
    return v;
}

}  // namespace

TEST(MetricProperties, RmseDominatesMae) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> len(1, 60);
    for (int c = 0; c < kCases; ++c) {
        const auto n = len(rng);
        const auto f = mixed_sample(rng, n), a = mixed_sample(rng, n);
        EXPECT_GE(rmse(f, a), mae(f, a) - 1e-15) << "case " << c;
    }
}

TEST(MetricProperties, SmapeIsBounded) {
    std::mt19937_64 rng(102);
    std::uniform_int_distribution<std::size_t> len(1, 60);
    int scored = 0;
    for (int c = 0; c < kCases; ++c) {
        const auto n = len(rng);
        const auto f = mixed_sample(rng, n), a = mixed_sample(rng, n);
        try {
            const double s = smape(f, a);
            EXPECT_GE(s, 0.0);
            EXPECT_LE(s, 200.0);
            ++scored;
        } catch (const InvalidArgument&) {
            // every pair was (0, 0)
        }
    }
    EXPECT_GT(scored, kCases * 9 / 10);
}

TEST(MetricProperties, IdenticalVectorsScoreZero) {
    std::mt19937_64 rng(103);
    for (int c = 0; c < 100; ++c) {
        const auto f = mixed_sample(rng, 20);
        EXPECT_EQ(rmse(f, f), 0.0);
        EXPECT_EQ(mae(f, f), 0.0);
    }
}

TEST(KpssProperties, ShiftInvariance) {
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    for (int c = 0; c < 200; ++c) {
        const auto y = fixtures::normal_draws(rng, 60 + static_cast<std::size_t>(c % 100));
        const double k = shift(rng);
        std::vector<double> z(y);
        for (auto& v : z) v += k;
        for (auto det : {Deterministic::constant, Deterministic::constant_trend}) {
            KpssOptions o;
            o.deterministic = det;
            const double a = kpss_test(y, o).statistic, b = kpss_test(z, o).statistic;
            EXPECT_NEAR(a, b, 1e-9 * (1.0 + a)) << "case " << c;
        }
    }
}

TEST(LjungBoxProperties, QIsNonDecreasingInLag) {
    std::mt19937_64 rng(105);
    std::vector<std::size_t> lags;
    for (std::size_t h = 1; h <= 24; ++h) lags.push_back(h);
    for (int c = 0; c < 300; ++c) {
        const auto x = fixtures::normal_draws(rng, 50 + static_cast<std::size_t>(c));
        const auto rows = ljung_box(x, lags);
        for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i].q_stat, rows[i - 1].q_stat) << "case " << c;
    }
}

TEST(SmoothingProperties, BrownAlphaOneTracksTheSeries) {
    std::mt19937_64 rng(106);
    for (int c = 0; c < 200; ++c) {
        const auto y = fixtures::normal_draws(rng, 30);
        const auto f = brown_filter(y, 1.0);
        for (std::size_t t = 0; t < y.size(); ++t) EXPECT_EQ(f.fitted[t], y[t]);
    }
}

TEST(SmoothingProperties, BrownAlphaZeroStaysAtTheFirstValue) {
    std::mt19937_64 rng(107);
    for (int c = 0; c < 200; ++c) {
        const auto y = fixtures::normal_draws(rng, 30);
        const auto f = brown_filter(y, 0.0);
        for (double v : f.fitted) EXPECT_EQ(v, y[0]);
        const auto fc = smoothing_forecast(f, 4);
        for (double v : fc) EXPECT_EQ(v, y[0]);
    }
}

TEST(SmoothingProperties, HoltWithoutTrendReducesToBrown) {
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < 500; ++c) {
        auto y = fixtures::normal_draws(rng, 40);
        y[1] = y[0];
        const double alpha = unit(rng);
        const auto h = holt_filter(y, alpha, 0.0);
        const auto b = brown_filter(y, alpha);
        for (std::size_t t = 0; t < y.size(); ++t) EXPECT_NEAR(h.fitted[t], b.fitted[t], 1e-12) << "case " << c;
        EXPECT_NEAR(h.ssr, b.ssr, 1e-12);
        EXPECT_NEAR(h.rmse, b.rmse, 1e-12);
    }
}
