#include "procyc/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace procyc {

void SqpConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1)");
    }
    if (!(p >= 0.0)) {
        throw std::invalid_argument("weight exponent p must be non-negative");
    }
    window.validate();
}

namespace {

// ceil(n*alpha) with a guard against floating-point spill when n*alpha is an
// exact integer (e.g. 100*0.95 evaluates just above 95).
std::size_t order_statistic_rank(std::size_t n, double alpha) {
    const double m = static_cast<double>(n) * alpha;
    const double f = std::floor(m);
    std::size_t k;
    if (m - f <= 1e-9) {
        k = static_cast<std::size_t>(f);
    } else {
        k = static_cast<std::size_t>(f) + 1;
    }
    if (k < 1) k = 1;
    if (k > n) k = n;
    return k;
}

}  // namespace

double empirical_quantile(std::span<const double> sample, double alpha) {
    if (sample.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("empirical_quantile: alpha must lie in (0,1)");
    }
    const std::size_t k = order_statistic_rank(sample.size(), alpha);
    std::vector<double> scratch(sample.begin(), sample.end());
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    return scratch[k - 1];
}

double weighted_quantile(std::span<const double> sample, double alpha, double p) {
    if (sample.empty()) throw std::invalid_argument("weighted_quantile: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("weighted_quantile: alpha must lie in (0,1)");
    }
    if (!(p >= 0.0)) {
        throw std::invalid_argument("weighted_quantile: p must be non-negative");
    }
    if (p == 0.0) return empirical_quantile(sample, alpha);

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    double total = 0.0;
    for (double v : sorted) total += std::pow(std::abs(v), p);
    if (!(total > 0.0)) {
        throw std::invalid_argument("weighted_quantile: all-zero sample with p > 0");
    }

    // Accumulate in ascending value order; a run of tied values contributes
    // all of its weight before the threshold is tested (the infimum ranges
    // over values, not sample positions).
    double cum = 0.0;
    std::size_t i = 0;
    const std::size_t n = sorted.size();
    while (i < n) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) {
            cum += std::pow(std::abs(sorted[j]), p);
            ++j;
        }
        if (cum / total >= alpha) return sorted[i];
        i = j;
    }
    return sorted.back();  // reachable only through rounding of cum/total
}

SqpSeries sqp_series(const LossSeries& loss, const SqpConfig& config) {
    config.validate();
    SqpSeries out;
    out.config = config;
    const auto windows = rolling_windows(loss.size(), config.window);
    out.points.reserve(windows.size());
    for (const Window& w : windows) {
        const std::span<const double> slice(loss.values.data() + w.begin, w.length());
        out.points.push_back(QuantileEstimate{
            w.anchor(), anchor_date(loss.dates, w.anchor()),
            weighted_quantile(slice, config.alpha, config.p)});
    }
    return out;
}

double unconditional_var(const LossSeries& loss, double alpha) {
    if (loss.values.empty()) throw std::invalid_argument("unconditional_var: empty series");
    return empirical_quantile(loss.values, alpha);
}

}  // namespace procyc
