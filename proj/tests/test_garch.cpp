#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "procyc/garch.hpp"
#include "procyc/random.hpp"
#include "procyc/stats.hpp"
#include "synthetic.hpp"

using namespace procyc;

TEST_CASE("parameter validation") {
    GarchParams p = testsupport::usa_params();
    CHECK_NOTHROW(p.validate());
    CHECK(p.stationary());
    CHECK(p.long_run_variance() == doctest::Approx(1.70e-6 / 0.013).epsilon(1e-9));

    GarchParams bad = p;
    bad.omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.student_nu = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    GarchParams ns = p;
    ns.alpha = 0.5;
    ns.beta = 0.6;
    CHECK_FALSE(ns.stationary());
    CHECK_THROWS_AS(simulate(ns, 100, 1), std::invalid_argument);
    CHECK_NOTHROW(simulate(ns, 100, 1, 10, true));
}

TEST_CASE("simulation") {
    SUBCASE("bit-identical for identical seeds") {
        const GarchParams p = testsupport::usa_params();
        const auto a = simulate(p, 5000, 123);
        const auto b = simulate(p, 5000, 123);
        const auto c = simulate(p, 5000, 124);
        CHECK(a == b);
        CHECK(a != c);
    }

    SUBCASE("degenerate alpha = beta = 0 is iid with variance omega") {
        GarchParams p;
        p.omega = 4e-4;
        p.alpha = 0.0;
        p.beta = 0.0;
        const auto x = simulate(p, 100000, 7);
        double s2 = 0.0;
        for (double v : x) s2 += v * v;
        s2 /= static_cast<double>(x.size());
        CHECK(std::abs(s2 - p.omega) / p.omega < 0.02);
    }

    SUBCASE("long-run variance of a long path") {
        const GarchParams p = testsupport::usa_params();
        const auto x = simulate(p, 1000000, 9);
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(x.size());
        double s2 = 0.0;
        for (double v : x) s2 += (v - mean) * (v - mean);
        s2 /= static_cast<double>(x.size());
        CHECK(std::abs(s2 - p.long_run_variance()) / p.long_run_variance() < 0.03);
    }

    SUBCASE("conditional variance never falls below omega") {
        const GarchParams p = testsupport::usa_params();
        const auto x = simulate(p, 20000, 5);
        double s2 = p.long_run_variance();
        for (double v : x) {
            s2 = p.omega + p.alpha * v * v + p.beta * s2;
            CHECK(s2 >= p.omega);
        }
    }

    SUBCASE("student innovations fatten the tails") {
        const GarchParams g = testsupport::usa_params();
        const GarchParams s = g.with_student(4.0);
        const auto xg = simulate(g, 200000, 21);
        const auto xs = simulate(s, 200000, 21);
        const auto kurt = [](const std::vector<double>& v) {
            double m2 = 0.0, m4 = 0.0;
            for (double x : v) {
                m2 += x * x;
                m4 += x * x * x * x;
            }
            m2 /= static_cast<double>(v.size());
            m4 /= static_cast<double>(v.size());
            return m4 / (m2 * m2);
        };
        CHECK(kurt(xs) > kurt(xg));
    }
}

TEST_CASE("tau_cor") {
    GarchParams usa = testsupport::usa_params();  // alpha + beta = 0.987
    CHECK(std::abs(tau_cor(usa) - 76.0) <= 2.0);

    GarchParams e;
    e.omega = 1e-6;
    e.alpha = 0.1;
    e.beta = std::exp(-1.0) - 0.1;
    CHECK(tau_cor(e) == doctest::Approx(1.0).epsilon(1e-12));

    // strictly increasing in alpha + beta
    double prev = 0.0;
    for (double s : {0.3, 0.6, 0.9, 0.95, 0.99, 0.999}) {
        GarchParams p;
        p.omega = 1e-6;
        p.alpha = s / 2;
        p.beta = s / 2;
        const double tc = tau_cor(p);
        CHECK(tc > prev);
        prev = tc;
    }

    GarchParams ns;
    ns.omega = 1e-6;
    ns.alpha = 0.5;
    ns.beta = 0.5;
    CHECK_THROWS_AS(tau_cor(ns), std::domain_error);
}

TEST_CASE("gaussian fit") {
    SUBCASE("recovers parameters from simulated data") {
        const GarchParams truth = testsupport::usa_params();
        double da = 0.0, db = 0.0, ds = 0.0;
        const int seeds = 3;
        for (int s = 0; s < seeds; ++s) {
            const auto x = simulate(truth, 8000, 1000 + static_cast<unsigned>(s));
            const GarchParams fit = fit_gaussian(x);
            CHECK(fit.stationary());
            da += std::abs(fit.alpha - truth.alpha);
            db += std::abs(fit.beta - truth.beta);
            ds += std::abs(fit.alpha + fit.beta - truth.alpha - truth.beta);
        }
        CHECK(da / seeds <= 0.03);
        CHECK(db / seeds <= 0.03);
        CHECK(ds / seeds <= 0.015);
    }

    SUBCASE("constant series rejected") {
        CHECK_THROWS_AS(fit_gaussian(std::vector<double>(600, 0.001)), std::invalid_argument);
        CHECK_THROWS_AS(fit_gaussian(std::vector<double>(100, 0.0)), std::invalid_argument);
    }

    SUBCASE("scaling the data scales omega quadratically and keeps alpha, beta") {
        const auto x = simulate(testsupport::usa_params(), 4000, 77);
        const GarchParams base = fit_gaussian(x);
        std::vector<double> scaled = x;
        const double c = 3.0;
        for (double& v : scaled) v *= c;
        const GarchParams fit = fit_gaussian(scaled);
        CHECK(fit.alpha == doctest::Approx(base.alpha).epsilon(1e-4));
        CHECK(fit.beta == doctest::Approx(base.beta).epsilon(1e-4));
        CHECK(fit.omega == doctest::Approx(c * c * base.omega).epsilon(1e-4));
    }
}

TEST_CASE("student tail fit on loss residuals") {
    GarchParams unit;
    unit.omega = 1.0;
    unit.alpha = 0.0;
    unit.beta = 0.0;

    SUBCASE("recovers nu = 5") {
        Rng rng(55);
        std::vector<double> x(10000);
        for (double& v : x) v = rng.standardized_student(5.0);
        const StudentNuFit fit = fit_student_nu_on_losses(x, unit);
        CHECK(fit.nu > 4.5);
        CHECK(fit.nu < 5.5);
        CHECK_FALSE(fit.at_upper_bound);
    }

    SUBCASE("gaussian residuals push nu to the cap") {
        Rng rng(56);
        std::vector<double> x(10000);
        for (double& v : x) v = rng.normal();
        const StudentNuFit fit = fit_student_nu_on_losses(x, unit);
        CHECK(fit.at_upper_bound);
        CHECK(fit.nu == doctest::Approx(kNuUpper).epsilon(0.02));
    }

    SUBCASE("needs enough losses") {
        std::vector<double> x(300, 0.1);  // no negative returns at all
        CHECK_THROWS_AS(fit_student_nu_on_losses(x, unit), std::invalid_argument);
    }
}

TEST_CASE("normalized log likelihood") {
    const GarchParams p = testsupport::usa_params();

    SUBCASE("twin simulations agree on the likelihood level") {
        // long twins: the volatility clustering makes the per-observation
        // likelihood a slowly mixing average
        const auto a = simulate(p, 400000, 301);
        const auto b = simulate(p, 400000, 302);
        const double lla = normalized_log_likelihood(a, p);
        const double llb = normalized_log_likelihood(b, p);
        CHECK(std::abs(lla - llb) <= 0.02);
    }

    SUBCASE("student evaluation beats gaussian on heavy-tailed data") {
        const GarchParams heavy = p.with_student(5.0);
        const auto x = simulate(heavy, 8000, 303);
        const GarchParams gfit = fit_gaussian(x);
        const StudentNuFit nu = fit_student_nu_on_losses(x, gfit);
        const double ll_gauss = normalized_log_likelihood(x, gfit);
        const double ll_student = normalized_log_likelihood(x, gfit.with_student(nu.nu));
        CHECK(ll_student > ll_gauss);
    }

    SUBCASE("degenerate input") {
        CHECK_THROWS_AS(normalized_log_likelihood(std::vector<double>(300, 0.0), p),
                        std::invalid_argument);
    }
}

TEST_CASE("residuals") {
    SUBCASE("self-consistency: standardized innovations come back out") {
        const GarchParams p = testsupport::usa_params();
        const auto x = simulate(p, 8000, 88);
        const auto res = residuals(x, p);
        CHECK(res.size() == x.size() - 252 - 1);
        double mean = 0.0;
        for (double e : res) mean += e;
        mean /= static_cast<double>(res.size());
        double s2 = 0.0;
        for (double e : res) s2 += (e - mean) * (e - mean);
        const double sd = std::sqrt(s2 / static_cast<double>(res.size() - 1));
        CHECK(std::abs(mean) < 0.05);
        CHECK(sd > 0.95);
        CHECK(sd < 1.05);

        std::vector<double> abs_res(res.size());
        for (std::size_t i = 0; i < res.size(); ++i) abs_res[i] = std::abs(res[i]);
        const auto rho = acf(abs_res, 100);
        const double band = acf_band(res.size());
        int inside = 0;
        for (double r : rho) inside += std::abs(r) <= band;
        CHECK(inside >= 90);
    }

    SUBCASE("constant sigma divides exactly") {
        GarchParams p;
        p.omega = 4.0;  // sigma = 2
        p.alpha = 0.0;
        p.beta = 0.0;
        std::vector<double> x(300);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.01 * static_cast<double>(i % 17) - 0.08;
        const auto res = residuals(x, p);
        REQUIRE(res.size() == x.size() - 253);
        for (std::size_t i = 0; i < res.size(); ++i) {
            CHECK(res[i] == x[252 + i + 1] / 2.0);
        }
    }

    SUBCASE("too short") {
        const GarchParams p = testsupport::usa_params();
        CHECK_THROWS_AS(residuals(std::vector<double>(253, 0.01), p), std::invalid_argument);
    }
}

TEST_CASE("fit report assembles the calibration summary") {
    const GarchParams truth = testsupport::usa_params();
    const auto x = simulate(truth, 6000, 505);
    GarchReportOptions opts;
    opts.replications = 40;
    opts.seed = 17;
    const GarchFitReport report = fit_report(x, opts);
    CHECK(report.params.stationary());
    CHECK(report.tau_cor_days == doctest::Approx(tau_cor(report.params)).epsilon(1e-12));
    CHECK(report.nu_at_upper_bound);  // gaussian innovations
    CHECK(report.mean_sim_volatility_pct > 10.0);
    CHECK(report.mean_sim_volatility_pct < 30.0);
    CHECK(report.historical_volatility_pct ==
          doctest::Approx(annualized_std_volatility_pct(x)).epsilon(1e-12));
    CHECK(report.normalized_ll_gaussian > 2.0);
    CHECK(report.normalized_ll_gaussian < 5.0);
}
