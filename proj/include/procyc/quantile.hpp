#pragma once

#include <span>
#include <vector>

#include "procyc/series.hpp"

namespace procyc {

/// Rolling weighted-quantile configuration: tail-weight exponent p >= 0,
/// threshold alpha in (0,1), and the window geometry (length encodes T).
struct SqpConfig {
    double p = 0.0;
    double alpha = 0.95;
    WindowSpec window;

    void validate() const;
};

struct QuantileEstimate {
    std::size_t anchor_index = 0;
    std::optional<Date> anchor_date;
    double value = 0.0;
};

struct SqpSeries {
    SqpConfig config;
    std::vector<QuantileEstimate> points;
};

/// Empirical alpha-quantile: the ceil(n*alpha)-th order statistic,
/// inf{x : (1/n) #(L_i <= x) >= alpha}. Always an element of the sample.
double empirical_quantile(std::span<const double> sample, double alpha);

/// Weighted empirical quantile with weights |L_i|^p:
/// inf{x : sum_{L_i <= x} |L_i|^p / sum |L_i|^p >= alpha}.
/// Ties accumulate their full weight before the threshold test.
/// p = 0 returns exactly empirical_quantile(sample, alpha).
double weighted_quantile(std::span<const double> sample, double alpha, double p);

/// Weighted quantile evaluated on each rolling window of the loss series.
SqpSeries sqp_series(const LossSeries& loss, const SqpConfig& config);

/// Whole-sample empirical quantile, the static regulatory benchmark.
double unconditional_var(const LossSeries& loss, double alpha);

}  // namespace procyc
