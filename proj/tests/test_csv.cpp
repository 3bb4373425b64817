#include <doctest.h>

#include <stdexcept>

#include <fstream>

#include "procyc/csv.hpp"
#include "synthetic.hpp"

using namespace procyc;

namespace {

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text) {
    const auto path = dir / name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("csv loading") {
    const auto dir = testsupport::make_temp_dir("csv");

    SUBCASE("two clean rows") {
        const auto p = write_text(dir, "ok.csv", "date,close\n2020-01-02,100\n2020-01-03,101\n");
        const PriceSeries s = load_price_series(p);
        REQUIRE(s.size() == 2);
        CHECK(s.close[1] == 101.0);
        CHECK(s.dates[0] == Date{2020, 1, 2});
    }

    SUBCASE("tab delimiter and column mapping") {
        const auto p = write_text(dir, "tabs.tsv", "Day\tPx\n02/01/2020\t99.5\n03/01/2020\t99.9\n");
        const PriceSeries s = load_price_series(p, CsvSchema{"Day", "Px"});
        REQUIRE(s.size() == 2);
        CHECK(s.close[0] == 99.5);
    }

    SUBCASE("out-of-order dates rejected") {
        const auto p = write_text(dir, "bad_order.csv",
                                  "date,close\n2020-01-03,100\n2020-01-02,101\n");
        CHECK_THROWS_WITH_AS(load_price_series(p), doctest::Contains("non-monotone dates"),
                             std::runtime_error);
    }

    SUBCASE("zero close names the row") {
        std::string text = "date,close\n";
        for (int i = 0; i < 7; ++i) {
            text += "2020-01-" + std::to_string(10 + i) + ",100\n";
        }
        text += "2020-01-17,0\n";  // data row 7, 0-based
        const auto p = write_text(dir, "zero.csv", text);
        CHECK_THROWS_WITH_AS(load_price_series(p), doctest::Contains("row 7"),
                             std::runtime_error);
    }

    SUBCASE("missing close and unparseable values") {
        const auto p1 = write_text(dir, "missing.csv", "date,close\n2020-01-02,\n");
        CHECK_THROWS_WITH_AS(load_price_series(p1), doctest::Contains("missing close"),
                             std::runtime_error);
        const auto p2 = write_text(dir, "notnum.csv", "date,close\n2020-01-02,n/a\n");
        CHECK_THROWS_WITH_AS(load_price_series(p2), doctest::Contains("unparseable close"),
                             std::runtime_error);
        const auto p3 = write_text(dir, "baddate.csv", "date,close\n01-02-2020,100\n");
        CHECK_THROWS_AS(load_price_series(p3), std::runtime_error);
    }

    SUBCASE("absent file and absent column") {
        CHECK_THROWS_AS(load_price_series(dir / "nope.csv"), std::runtime_error);
        const auto p = write_text(dir, "nocol.csv", "date,price\n2020-01-02,100\n");
        CHECK_THROWS_WITH_AS(load_price_series(p), doctest::Contains("'close' not found"),
                             std::runtime_error);
    }

    std::filesystem::remove_all(dir);
}
