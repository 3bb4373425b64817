#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "procyc/random.hpp"
#include "procyc/volatility.hpp"

using namespace procyc;

TEST_CASE("sample volatility hand examples") {
    const std::vector<double> v{1, 2, 3};
    CHECK(sample_volatility(v, 1) == doctest::Approx(1.0).epsilon(1e-15));  // (1+0+1)/2
    CHECK(sample_volatility(v, 2) == doctest::Approx(1.0).epsilon(1e-15));  // sqrt((1+0+1)/2)

    const std::vector<double> constant(40, 0.007);
    CHECK(sample_volatility(constant, 1) <= 1e-15);  // rounding noise of the mean
    CHECK(sample_volatility(constant, 2) <= 1e-15);

    CHECK_THROWS_AS(sample_volatility(std::vector<double>{1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_volatility(v, 3), std::invalid_argument);
}

TEST_CASE("annualization") {
    CHECK(annualize(0.0, 252) == 0.0);
    CHECK(annualize(0.01, 252) == doctest::Approx(0.15874507866387544).epsilon(1e-12));
    CHECK(annualize(1.0, 1) == 1.0);
    CHECK_THROWS_AS(annualize(-0.1, 252), std::invalid_argument);
}

TEST_CASE("scale equivariance and translation invariance") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> window(5 + rng.raw() % 200);
        for (double& v : window) v = rng.student(5.0);
        for (int k : {1, 2}) {
            const double base = sample_volatility(window, k);
            for (double c : {-3.0, 0.5, 7.25}) {
                std::vector<double> scaled = window;
                for (double& v : scaled) v *= c;
                CHECK(sample_volatility(scaled, k) ==
                      doctest::Approx(std::abs(c) * base).epsilon(1e-12));
            }
            std::vector<double> shifted = window;
            for (double& v : shifted) v += 0.37;
            CHECK(sample_volatility(shifted, k) == doctest::Approx(base).epsilon(1e-9));
        }
    }
}

TEST_CASE("Cauchy-Schwarz bound between the two deviation statistics") {
    // (sum|d| / (n-1))^2 <= (sum d^2 / (n-1)) * n/(n-1)
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.raw() % 100;
        std::vector<double> window(n);
        for (double& v : window) v = rng.normal();
        const double v1 = sample_volatility(window, 1);
        const double v2 = sample_volatility(window, 2);
        CHECK(v1 * v1 <=
              v2 * v2 * static_cast<double>(n) / static_cast<double>(n - 1) + 1e-12);
    }
}

TEST_CASE("volatility series over rolling windows") {
    ReturnSeries flat;
    flat.values.assign(504, 0.001);
    const auto zero = volatility_series(flat, 1, WindowSpec{252, 21});
    REQUIRE(zero.size() == 13);
    for (const auto& est : zero) {
        CHECK(est.raw <= 1e-15);
        CHECK(est.annualized <= 1e-14);
        CHECK(est.n == 252);
    }

    // window strictly precedes the anchor
    Rng rng(3);
    ReturnSeries r;
    r.values.resize(700);
    for (double& v : r.values) v = rng.normal() * 0.01;
    const auto series = volatility_series(r, 2, WindowSpec{252, 21});
    for (const auto& est : series) {
        const std::span<const double> window(r.values.data() + est.anchor_index - 252, 252);
        CHECK(est.raw == sample_volatility(window, 2));
        CHECK(est.annualized == annualize(est.raw, 252));
    }
}

TEST_CASE("annualized std volatility of iid noise approaches sqrt(252) sigma") {
    Rng rng(10);
    const double sigma = 0.01;
    ReturnSeries r;
    r.values.resize(10000);
    for (double& v : r.values) v = sigma * rng.normal();
    const auto series = volatility_series(r, 2, WindowSpec{252, 21});
    double acc = 0.0;
    for (const auto& est : series) acc += est.annualized;
    const double mean = acc / static_cast<double>(series.size());
    const double target = std::sqrt(252.0) * sigma;
    CHECK(std::abs(mean - target) / target < 0.02);
}
