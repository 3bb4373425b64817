#include "procyc/volatility.hpp"

#include <cmath>
#include <stdexcept>

namespace procyc {

double sample_volatility(std::span<const double> window, int k) {
    if (window.size() < 2) {
        throw std::invalid_argument("sample_volatility: window must hold at least 2 points");
    }
    if (k != 1 && k != 2) {
        throw std::invalid_argument("sample_volatility: k must be 1 or 2");
    }
    const std::size_t n = window.size();
    double mean = 0.0;
    for (double x : window) mean += x;
    mean /= static_cast<double>(n);

    double acc = 0.0;
    if (k == 1) {
        for (double x : window) acc += std::abs(x - mean);
        return acc / static_cast<double>(n - 1);
    }
    for (double x : window) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(n - 1));
}

double annualize(double raw, int n) {
    if (raw < 0.0) throw std::invalid_argument("annualize: raw volatility must be >= 0");
    if (n < 1) throw std::invalid_argument("annualize: n must be positive");
    return std::sqrt(static_cast<double>(n)) * raw;
}

std::vector<VolatilityEstimate> volatility_series(const ReturnSeries& returns, int k,
                                                  const WindowSpec& spec) {
    const auto windows = rolling_windows(returns.size(), spec);
    std::vector<VolatilityEstimate> out;
    out.reserve(windows.size());
    for (const Window& w : windows) {
        const std::span<const double> slice(returns.values.data() + w.begin, w.length());
        const double raw = sample_volatility(slice, k);
        out.push_back(VolatilityEstimate{w.anchor(), anchor_date(returns.dates, w.anchor()), k,
                                         spec.length_days, raw,
                                         annualize(raw, spec.length_days)});
    }
    return out;
}

}  // namespace procyc
