#include "oracles.hpp"
#include "support.hpp"

#include <fxcast/arima.hpp>

#include <gtest/gtest.h>

using namespace fxcast;

namespace {

ArimaModel make_model(int p, int d, int q, double mean, std::vector<double> ar, std::vector<double> ma, double sigma2) {
    ArimaModel m;
    m.spec = {p, d, q, true};
    m.mean = mean;
    m.ar = std::move(ar);
    m.ma = std::move(ma);
    m.sigma2 = sigma2;
    return m;
}

std::vector<double> simulate_arma11(std::mt19937_64& rng, std::size_t n, double c, double phi, double theta) {
    const auto e = fixtures::normal_draws(rng, n + 200);
    std::vector<double> y(n + 200, 0.0);
    for (std::size_t t = 1; t < y.size(); ++t) y[t] = c + phi * y[t - 1] + e[t] + theta * e[t - 1];
    return {y.begin() + 200, y.end()};
}

}  // namespace

TEST(ExactLikelihood, Ar1MatchesClosedForm) {
    std::mt19937_64 rng(21);
    for (double phi : {-0.8, -0.2, 0.0, 0.45, 0.9}) {
        for (std::size_t n : {5u, 20u, 50u}) {
            const auto w = fixtures::normal_draws(rng, n, 1.3);
            const auto m = make_model(1, 0, 0, 0.2, {phi}, {}, 1.7);
            EXPECT_NEAR(exact_log_likelihood(m, w), oracle::ar1_log_likelihood(w, 0.2, phi, 1.7), 1e-8)
                << "phi=" << phi << " n=" << n;
        }
    }
}

TEST(ExactLikelihood, Arma11MatchesDenseGaussian) {
    std::mt19937_64 rng(22);
    const double phi = 0.6, theta = -0.35, s2 = 0.8;
    const auto w = simulate_arma11(rng, 40, 0.0, phi, theta);
    std::vector<double> gamma(40);
    gamma[0] = s2 * (1 + 2 * phi * theta + theta * theta) / (1 - phi * phi);
    gamma[1] = s2 * (1 + phi * theta) * (phi + theta) / (1 - phi * phi);
    for (std::size_t k = 2; k < gamma.size(); ++k) gamma[k] = phi * gamma[k - 1];
    const auto m = make_model(1, 0, 1, 0.1, {phi}, {theta}, s2);
    EXPECT_NEAR(exact_log_likelihood(m, w), oracle::gaussian_log_likelihood(w, 0.1, gamma), 1e-8);
}

TEST(ExactLikelihood, Ma2MatchesDenseGaussian) {
    std::mt19937_64 rng(23);
    const double t1 = 0.5, t2 = -0.3, s2 = 1.4;
    const auto w = fixtures::normal_draws(rng, 35);
    const std::vector<double> gamma{s2 * (1 + t1 * t1 + t2 * t2), s2 * (t1 + t1 * t2), s2 * t2};
    const auto m = make_model(0, 0, 2, -0.05, {}, {t1, t2}, s2);
    EXPECT_NEAR(exact_log_likelihood(m, w), oracle::gaussian_log_likelihood(w, -0.05, gamma), 1e-8);
}

TEST(ExactLikelihood, Ar3MatchesDenseGaussian) {
    // autocovariances of a stationary AR(3) from the Yule-Walker system
    const double a1 = 0.4, a2 = -0.2, a3 = 0.1, s2 = 1.0;
    Eigen::Matrix4d A;
    A << 1, -a1, -a2, -a3,
        -a1, 1 - a2, -a3, 0,
        -a2, -a1 - a3, 1, 0,
        -a3, -a2, -a1, 1;
    const Eigen::Vector4d g = A.colPivHouseholderQr().solve(Eigen::Vector4d(s2, 0, 0, 0));
    std::vector<double> gamma{g(0), g(1), g(2), g(3)};
    for (int k = 4; k < 30; ++k) gamma.push_back(a1 * gamma[k - 1] + a2 * gamma[k - 2] + a3 * gamma[k - 3]);
    std::mt19937_64 rng(24);
    const auto w = fixtures::normal_draws(rng, 30);
    const auto m = make_model(3, 0, 0, 0.0, {a1, a2, a3}, {}, s2);
    EXPECT_NEAR(exact_log_likelihood(m, w), oracle::gaussian_log_likelihood(w, 0.0, gamma), 1e-8);
}

TEST(ExactLikelihood, ConcentratedEqualsExactAtProfiledVariance) {
    std::mt19937_64 rng(25);
    const auto w = simulate_arma11(rng, 60, 0.0, 0.3, 0.2);
    auto m = make_model(1, 0, 1, 0.0, {0.3}, {0.2}, 1.0);
    double s2 = 0.0;
    const double conc = concentrated_log_likelihood(m, w, &s2);
    m.sigma2 = s2;
    EXPECT_NEAR(conc, exact_log_likelihood(m, w), 1e-9);
}

TEST(Parameterisation, PartialAutocorrelationRoundTrip) {
    const std::vector<double> r{0.5, -0.3, 0.2, 0.7};
    const auto ar = detail::pacf_to_ar(r);
    const auto back = detail::ar_to_pacf(ar);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(back[i], r[i], 1e-12);
    EXPECT_GT(min_ar_root_modulus(make_model(4, 0, 0, 0, ar, {}, 1)), 1.0);
    EXPECT_NEAR(min_ar_root_modulus(make_model(1, 0, 0, 0, {0.5}, {}, 1)), 2.0, 1e-12);
    EXPECT_NEAR(min_ma_root_modulus(make_model(0, 0, 1, 0, {}, {-0.25}, 1)), 4.0, 1e-12);
}

TEST(Correlogram, Ar1TheoreticalPacf) {
    const double phi = 0.7;
    std::vector<double> rho;
    for (int k = 1; k <= 6; ++k) rho.push_back(std::pow(phi, k));
    const auto pacf = durbin_levinson_pacf(rho);
    EXPECT_NEAR(pacf[0], phi, 1e-14);
    for (std::size_t k = 1; k < pacf.size(); ++k) EXPECT_NEAR(pacf[k], 0.0, 1e-13);
}

TEST(Correlogram, RowsAndBand) {
    std::mt19937_64 rng(26);
    const auto x = fixtures::normal_draws(rng, 100);
    const auto rows = correlogram(x, 10);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows.front().lag, 1u);
    EXPECT_NEAR(rows.front().band, 0.196, 1e-12);
    EXPECT_NEAR(rows.front().acf, rows.front().pacf, 1e-14);
    for (const auto& r : rows) EXPECT_LE(std::abs(r.acf), 1.0);
    EXPECT_THROW(correlogram(x, 50), InvalidArgument);
    EXPECT_THROW(correlogram(x, 0), InvalidArgument);
}

TEST(InformationCriteria, PerObservationFormulas) {
    const auto ic = information_criteria(-100.0, 3, 50);
    EXPECT_NEAR(ic.aic, (200.0 + 6.0) / 50.0, 1e-14);
    EXPECT_NEAR(ic.bic, (200.0 + 3.0 * std::log(50.0)) / 50.0, 1e-14);
    EXPECT_NEAR(ic.hq, (200.0 + 6.0 * std::log(std::log(50.0))) / 50.0, 1e-14);
    EXPECT_THROW(information_criteria(0.0, 5, 5), InvalidArgument);
}

TEST(Estimation, RecoversArma11) {
    std::mt19937_64 rng(27);
    const auto y = simulate_arma11(rng, 1500, 0.2, 0.5, 0.3);
    const auto fit = fit_arima(y, {1, 0, 1, true});
    EXPECT_NEAR(fit.model.ar[0], 0.5, 0.06);
    EXPECT_NEAR(fit.model.ma[0], 0.3, 0.06);
    EXPECT_NEAR(fit.model.mean, 0.2 / 0.5, 0.15);
    EXPECT_NEAR(fit.model.sigma2, 1.0, 0.1);
    ASSERT_EQ(fit.coefficients.size(), 3u);
    EXPECT_EQ(fit.coefficients[0].name, "C");
    EXPECT_EQ(fit.coefficients[1].name, "AR(1)");
    EXPECT_EQ(fit.coefficients[2].name, "MA(1)");
    for (const auto& c : fit.coefficients) EXPECT_GT(c.std_error, 0.0);
    EXPECT_FALSE(fit.boundary);
    EXPECT_EQ(fit.residuals.size(), y.size());
    // the optimum is at least as good as the generating parameters
    auto truth = make_model(1, 0, 1, 0.4, {0.5}, {0.3}, 1.0);
    EXPECT_GE(fit.log_likelihood, concentrated_log_likelihood(truth, y) - 1e-9);
}

TEST(Estimation, DifferencingIsApplied) {
    std::mt19937_64 rng(28);
    auto w = simulate_arma11(rng, 400, 0.0, 0.4, 0.0);
    std::vector<double> y(w.size() + 1, 10.0);
    for (std::size_t t = 0; t < w.size(); ++t) y[t + 1] = y[t] + w[t];
    const auto fit = fit_arima(y, {1, 1, 0, false});
    EXPECT_EQ(fit.n_obs, w.size());
    EXPECT_NEAR(fit.model.ar[0], 0.4, 0.1);
}

TEST(Estimation, InputErrors) {
    EXPECT_THROW(fit_arima(std::vector<double>(30, 1.0), {1, 0, 0, true}), DegenerateSeries);
    EXPECT_THROW(fit_arima(std::vector<double>{1, 2, 3, 4}, {2, 0, 2, true}), DataError);
    EXPECT_THROW(fit_arima(std::vector<double>{1, 2, 3}, {0, 0, 0, false}), InvalidArgument);
}

TEST(Forecast, Ar1ClosedForm) {
    const auto m = make_model(1, 0, 0, 0.5, {0.6}, {}, 1.0);
    const std::vector<double> origin{0.1, -0.4, 0.9, 2.0};
    const auto f = forecast(m, origin, 5);
    for (std::size_t h = 1; h <= 5; ++h)
        EXPECT_NEAR(f[h - 1], 0.5 + std::pow(0.6, static_cast<double>(h)) * (2.0 - 0.5), 1e-12) << h;
}

TEST(Forecast, IntegratedModelCumulatesDifferences) {
    const auto m = make_model(1, 1, 0, 0.2, {0.5}, {}, 1.0);
    const std::vector<double> origin{10.0, 10.5, 10.2, 11.0};  // last difference 0.8
    const auto f = forecast(m, origin, 3);
    double level = 11.0, w = 0.8;
    for (std::size_t h = 0; h < 3; ++h) {
        w = 0.2 + 0.5 * (w - 0.2);
        level += w;
        EXPECT_NEAR(f[h], level, 1e-12);
    }
}

TEST(Forecast, RollingStartsWithTheStaticOneStep) {
    std::mt19937_64 rng(29);
    const auto y = simulate_arma11(rng, 120, 0.1, 0.4, 0.3);
    const auto m = make_model(1, 0, 1, 0.2, {0.4}, {0.3}, 1.0);
    const std::vector<double> origin(y.begin(), y.begin() + 100), actual(y.begin() + 100, y.end());
    const auto rolling = forecast(m, origin, actual, ForecastScheme::rolling_one_step);
    const auto fixed = forecast(m, origin, actual, ForecastScheme::static_multi_step);
    ASSERT_EQ(rolling.size(), actual.size());
    EXPECT_NEAR(rolling[0], fixed[0], 1e-12);
    // rolling step k equals a static one-step forecast from the extended origin
    std::vector<double> extended(origin);
    extended.insert(extended.end(), actual.begin(), actual.begin() + 5);
    EXPECT_NEAR(rolling[5], forecast(m, extended, 1)[0], 1e-10);
}

TEST(Selection, RanksAscendingAndRecordsFailures) {
    std::mt19937_64 rng(30);
    const auto y = simulate_arma11(rng, 300, 0.0, 0.5, 0.3);
    const auto sel = select_arima(y, {1, 2}, {0, 1}, 0, Criterion::bic);
    ASSERT_EQ(sel.ranked.size(), 4u);
    for (std::size_t i = 1; i < sel.ranked.size(); ++i) EXPECT_LE(sel.ranked[i - 1].value, sel.ranked[i].value);
    for (const auto& e : sel.ranked) EXPECT_DOUBLE_EQ(e.value, e.fit.bic);
    EXPECT_THROW(select_arima(y, {2, 1}, {0, 1}, 0, Criterion::aic), InvalidArgument);
}

TEST(Labels, SpecLabels) {
    EXPECT_EQ((ArimaSpec{2, 1, 2, true}).label(), "ARIMA(2,1,2)");
    EXPECT_EQ((ArimaSpec{4, 0, 0, true}).label(), "AR(4)");
    EXPECT_EQ((ArimaSpec{0, 0, 2, true}).label(), "MA(2)");
    EXPECT_EQ((ArimaSpec{1, 0, 1, true}).label(), "ARMA(1,1)");
}
