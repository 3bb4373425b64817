#pragma once

#include <span>
#include <vector>

#include "procyc/series.hpp"

namespace procyc {

/// Realized-volatility estimate over one window: `raw` is the
/// per-observation deviation V_{k,n}, `annualized` is sqrt(n) * raw.
struct VolatilityEstimate {
    std::size_t anchor_index = 0;
    std::optional<Date> anchor_date;
    int k = 1;
    int n = 0;
    double raw = 0.0;
    double annualized = 0.0;
};

/// Deviation statistic { (1/(n-1)) sum |X_i - mean|^k }^(1/k) with the inner
/// mean normalized by 1/n. k = 1 is the MAD variant, k = 2 the standard
/// deviation; both use the same 1/(n-1) outer normalization.
double sample_volatility(std::span<const double> window, int k);

/// Annualization sqrt(n) * raw, applied uniformly for k = 1 and 2.
double annualize(double raw, int n);

std::vector<VolatilityEstimate> volatility_series(const ReturnSeries& returns, int k,
                                                  const WindowSpec& spec);

}  // namespace procyc
