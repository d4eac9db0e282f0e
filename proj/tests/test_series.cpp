#include "support.hpp"

#include <fxcast/app/ingest.hpp>
#include <fxcast/series.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace fxcast;
using namespace fxcast::app;

namespace {

Date ymd(int y, unsigned m, unsigned d) { return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}; }

PriceSeries parse(const std::string& text, const std::string& date_col = "date", const std::string& rate_col = "rate") {
    std::istringstream in(text);
    return parse_price_csv(in, date_col, rate_col);
}

}  // namespace

TEST(IsoDate, AcceptsCalendarDates) {
    Date d;
    ASSERT_TRUE(parse_iso_date("2022-12-13", d));
    EXPECT_EQ(d, ymd(2022, 12, 13));
    EXPECT_EQ(to_iso_string(d), "2022-12-13");
    ASSERT_TRUE(parse_iso_date("2024-02-29", d));
}

TEST(IsoDate, RejectsMalformedOrImpossibleDates) {
    Date d;
    for (const char* bad : {"2022-13-01", "2022-02-30", "2023-02-29", "2022/05/16", "22-05-16", "2022-5-16",
                            "2022-05-16T00", "", "abcd-ef-gh"})
        EXPECT_FALSE(parse_iso_date(bad, d)) << bad;
}

TEST(Returns, PercentChangeDatedAtTheLaterDay) {
    const PriceSeries p({ymd(2022, 5, 16), ymd(2022, 5, 17), ymd(2022, 5, 18)}, {10.0, 11.0, 9.9});
    const auto r = compute_returns(p);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_DOUBLE_EQ(r[0], 10.0);
    EXPECT_NEAR(r[1], -10.0, 1e-12);
    EXPECT_EQ(r.dates()[0], ymd(2022, 5, 17));
}

TEST(Returns, FlatPricesGiveZeroReturns) {
    const PriceSeries p({ymd(2022, 1, 1), ymd(2022, 1, 2), ymd(2022, 1, 3)}, {18.5, 18.5, 18.5});
    const auto r = compute_returns(p);
    for (double v : r.values()) EXPECT_EQ(v, 0.0);
}

TEST(PriceSeriesInvariants, RejectsBadInput) {
    EXPECT_THROW(PriceSeries({ymd(2022, 1, 1)}, {1.0}), DataError);
    EXPECT_THROW(PriceSeries({ymd(2022, 1, 1), ymd(2022, 1, 2)}, {1.0, 0.0}), DataError);
    EXPECT_THROW(PriceSeries({ymd(2022, 1, 2), ymd(2022, 1, 1)}, {1.0, 2.0}), DataError);
    EXPECT_THROW(PriceSeries({ymd(2022, 1, 1), ymd(2022, 1, 2)}, {1.0}), DataError);
}

TEST(Differencing, InverseOfIntegrate) {
    const ReturnSeries x(std::vector<double>{3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0});
    for (std::size_t d = 0; d <= 3; ++d) {
        const auto w = difference(x, d);
        EXPECT_EQ(w.size(), x.size() - d);
        const std::vector<double> anchors(x.values().begin(), x.values().begin() + static_cast<std::ptrdiff_t>(d));
        const auto back = integrate(anchors, w.values());
        ASSERT_EQ(back.size(), x.size());
        for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-12) << "d=" << d << " i=" << i;
    }
}

TEST(Differencing, SecondDifferenceOfQuadraticIsConstant) {
    std::vector<double> v;
    for (int t = 0; t < 10; ++t) v.push_back(0.5 * t * t + t);
    const auto w = difference(ReturnSeries(v), 2);
    ASSERT_EQ(w.size(), 8u);
    for (double x : w.values()) EXPECT_NEAR(x, 1.0, 1e-12);
}

TEST(Split, FractionFloorsAndExplicitLengthWins) {
    const ReturnSeries x(std::vector<double>(212, 0.1));
    const auto s = split(x, {0.85});
    EXPECT_EQ(s.train.size(), 180u);
    EXPECT_EQ(s.test.size(), 32u);
    const auto t = split_at(x, 179);
    EXPECT_EQ(t.train.size(), 179u);
    EXPECT_EQ(t.test.size(), 33u);
}

TEST(Split, RejectsEmptySegments) {
    const ReturnSeries x(std::vector<double>(5, 0.1));
    EXPECT_THROW(split_at(x, 0), InvalidArgument);
    EXPECT_THROW(split_at(x, 5), InvalidArgument);
    EXPECT_THROW(split(x, {0.1}), InvalidArgument);
    EXPECT_THROW(split(x, {1.0}), InvalidArgument);
}

TEST(Ingest, ConfigurableColumnsAndSorting) {
    const auto p = parse("when,close,volume\n2022-05-18,3.0,1\n2022-05-16,1.0,1\n2022-05-17,2.0,1\n", "when", "close");
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p.dates()[0], ymd(2022, 5, 16));
    EXPECT_DOUBLE_EQ(p.values()[2], 3.0);
}

TEST(Ingest, ToleratesBomCrlfAndBlankLines) {
    const auto p = parse("\xEF\xBB\xBF" "date,rate\r\n2022-05-16,1.5\r\n\r\n2022-05-17,1.6\r\n");
    EXPECT_EQ(p.size(), 2u);
}

TEST(Ingest, TypedErrors) {
    EXPECT_THROW(parse("day,rate\n2022-05-16,1\n2022-05-17,2\n"), MissingColumn);
    EXPECT_THROW(parse("date,rate\n16/05/2022,1\n2022-05-17,2\n"), UnparseableDate);
    EXPECT_THROW(parse("date,rate\n2022-05-16,-1\n2022-05-17,2\n"), NonPositiveRate);
    EXPECT_THROW(parse("date,rate\n2022-05-16,abc\n2022-05-17,2\n"), NonPositiveRate);
    EXPECT_THROW(parse("date,rate\n2022-05-16,1\n2022-05-16,2\n"), DuplicateDate);
    EXPECT_THROW(parse(""), FileError);
    EXPECT_THROW(ingest_csv("/nonexistent/rates.csv"), FileError);
    try {
        parse("date,price\n2022-05-16,1\n");
        FAIL();
    } catch (const MissingColumn& e) {
        EXPECT_EQ(e.column(), "rate");
        EXPECT_EQ(e.kind(), ErrorKind::data);
    }
}

TEST(Ingest, SnapshotShape) {
    const auto p = ingest_csv(fixtures::snapshot_path());
    EXPECT_EQ(p.size(), 213u);
    EXPECT_EQ(to_iso_string(p.dates().front()), "2022-05-15");
    EXPECT_EQ(to_iso_string(p.dates().back()), "2022-12-13");
    EXPECT_EQ(compute_returns(p).size(), fixtures::reference().at("n_returns").get<std::size_t>());
}

TEST(Fingerprint, Fnv1aKnownVectors) {
    EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
    EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
    EXPECT_EQ(hex64(fnv1a("foobar")), "85944171f73967e8");
}
