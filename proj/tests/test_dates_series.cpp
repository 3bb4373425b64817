#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "procyc/series.hpp"
#include "synthetic.hpp"

using namespace procyc;

TEST_CASE("date parsing accepts ISO and DD/MM/YYYY") {
    CHECK(Date::parse("2020-01-02") == Date{2020, 1, 2});
    CHECK(Date::parse("02/01/2020") == Date{2020, 1, 2});
    CHECK(Date::parse("2020-01-02").to_string() == "2020-01-02");
    CHECK_THROWS_AS(Date::parse("2020/01/02"), std::invalid_argument);
    CHECK_THROWS_AS(Date::parse("2020-13-02"), std::invalid_argument);
    CHECK_THROWS_AS(Date::parse("31/02/2020"), std::invalid_argument);
    CHECK(Date{2020, 1, 2} < Date{2020, 1, 3});
    CHECK(Date{2019, 12, 31} < Date{2020, 1, 1});
}

TEST_CASE("price series invariants") {
    CHECK_THROWS_WITH_AS(
        PriceSeries::create({Date{2020, 1, 2}, Date{2020, 1, 1}}, {100.0, 101.0}),
        doctest::Contains("non-monotone dates"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(PriceSeries::create({Date{2020, 1, 2}}, {0.0}),
                         doctest::Contains("non-positive price"), std::invalid_argument);
    // duplicate dates violate strict increase
    CHECK_THROWS_AS(PriceSeries::create({Date{2020, 1, 2}, Date{2020, 1, 2}}, {100.0, 101.0}),
                    std::invalid_argument);
}

TEST_CASE("log returns match analytic values") {
    auto series = [](std::vector<double> close) {
        std::vector<Date> dates;
        for (int i = 0; i < static_cast<int>(close.size()); ++i) {
            dates.push_back(Date{2020, 1, i + 1});
        }
        return PriceSeries::create(dates, std::move(close));
    };
    CHECK(log_returns(series({100.0, 100.0})).values[0] == 0.0);
    CHECK(log_returns(series({100.0, 100.0 * std::exp(0.01)})).values[0] ==
          doctest::Approx(0.01).epsilon(1e-12));
    // ln(90/100), frozen from a high-precision evaluation
    CHECK(log_returns(series({100.0, 90.0})).values[0] ==
          doctest::Approx(-0.10536051565782630).epsilon(1e-12));
    CHECK(log_returns(series({100.0, 90.0})).dates[0] == Date{2020, 1, 2});
    CHECK_THROWS_AS(log_returns(series({100.0})), std::invalid_argument);
}

TEST_CASE("losses negate and round-trip") {
    ReturnSeries r;
    r.values = {0.01, -0.02, 0.0};
    r.dates = {Date{2020, 1, 2}, Date{2020, 1, 3}, Date{2020, 1, 6}};
    const LossSeries l = losses(r);
    CHECK(l.values == std::vector<double>{-0.01, 0.02, 0.0});
    CHECK(l.dates == r.dates);

    ReturnSeries as_returns;
    as_returns.values = l.values;
    as_returns.dates = l.dates;
    CHECK(losses(as_returns).values == r.values);
}

TEST_CASE("price reconstruction from log returns") {
    std::mt19937_64 eng(11);
    std::normal_distribution<double> gauss(0.0, 0.02);
    std::vector<double> x(400);
    for (double& v : x) v = gauss(eng);
    const PriceSeries prices = testsupport::prices_from_returns(x, 250.0);
    const ReturnSeries r = log_returns(prices);
    double level = prices.close.front();
    for (std::size_t i = 0; i < r.size(); ++i) {
        level *= std::exp(r.values[i]);
        CHECK(std::abs(level - prices.close[i + 1]) / prices.close[i + 1] <= 1e-12);
    }
}

TEST_CASE("rolling window geometry") {
    const WindowSpec spec{252, 21};
    const auto windows = rolling_windows(504, spec);
    REQUIRE(windows.size() == 13);  // 1 + floor((504-252)/21)
    CHECK(windows.front().anchor() == 252);
    CHECK(windows.front().begin == 0);
    CHECK(windows.back().anchor() == 504);

    CHECK(rolling_windows(252, spec).size() == 1);
    CHECK_THROWS_AS(rolling_windows(251, spec), std::invalid_argument);
}

TEST_CASE("window count formula and non-overlap hold for random geometries") {
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(eng() % 300);
        const int step = 1 + static_cast<int>(eng() % 40);
        const std::size_t obs = static_cast<std::size_t>(n) + eng() % 1000;
        const auto windows = rolling_windows(obs, WindowSpec{n, step});
        CHECK(windows.size() == 1 + (obs - static_cast<std::size_t>(n)) /
                                        static_cast<std::size_t>(step));
        for (const Window& w : windows) {
            CHECK(w.length() == static_cast<std::size_t>(n));
            CHECK(w.end <= obs);
            CHECK(w.end - 1 < w.anchor());  // max window index strictly before anchor
        }
    }
}

TEST_CASE("weekly resampling keeps every fifth close") {
    std::vector<double> x(49, 0.001);
    const PriceSeries daily = testsupport::prices_from_returns(x);
    const PriceSeries weekly = resample_every(daily, 5);
    CHECK(weekly.size() == 10);
    CHECK(weekly.frequency == Frequency::weekly);
    CHECK(weekly.close[1] == daily.close[5]);
    CHECK_THROWS_AS(resample_every(daily, 0), std::invalid_argument);
}

TEST_CASE("anchor date labels") {
    std::vector<Date> dates{Date{2020, 1, 2}, Date{2020, 1, 3}, Date{2020, 1, 6}};
    CHECK(anchor_date(dates, 1) == Date{2020, 1, 3});
    CHECK_FALSE(anchor_date(dates, 3).has_value());  // one past the end
}
