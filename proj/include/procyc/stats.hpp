#pragma once

#include <span>
#include <utility>
#include <vector>

#include "procyc/series.hpp"

namespace procyc {

/// One look-forward ratio R(t): realized next-year quantile over the
/// trailing weighted-quantile estimate. ratio > 1 flags under-estimation of
/// the future risk, ratio < 1 over-estimation.
struct RatioPoint {
    std::size_t anchor_index = 0;
    std::optional<Date> anchor_date;
    double numerator = 0.0;    // empirical quantile over [t, t+1y), p = 0
    double denominator = 0.0;  // weighted quantile over [t-T, t)
    double ratio = 0.0;
    double log_ratio = 0.0;
    bool log_defined = false;

    bool under_estimation() const { return ratio > 1.0; }
    bool over_estimation() const { return ratio < 1.0; }
};

struct LookforwardSeries {
    double p = 0.0;
    double alpha = 0.95;
    double t_years = 1.0;
    int step_days = kDaysPerMonth;
    std::vector<RatioPoint> points;      // points with a usable ratio
    std::size_t dropped_count = 0;       // zero-denominator anchors, ratio undefined
};

/// Monthly look-forward ratios: for each anchor t the denominator is the
/// (p, alpha) weighted quantile on [t-T, t), the numerator the plain
/// empirical quantile on [t, t+1y); the two windows are disjoint.
LookforwardSeries lookforward_ratios(const LossSeries& loss, double p, double alpha,
                                     double t_years, int step_days = kDaysPerMonth);

/// Root mean square distance of the ratios from the perfect prediction 1.
double rmse(std::span<const RatioPoint> ratios);
double rmse_values(std::span<const double> ratios);

/// Product-moment correlation; requires equal lengths >= 3 and two
/// non-constant inputs.
double pearson(std::span<const double> x, std::span<const double> y);

/// Rank correlation (average ranks on ties).
double spearman(std::span<const double> x, std::span<const double> y);

/// Variance-stabilized confidence interval for a sample correlation of n
/// iid bivariate-normal pairs: tanh(atanh(r) +- z / sqrt(n-3)).
std::pair<double, double> fisher_ci(double r, std::size_t n, double level);

/// Sample autocorrelations at lags 1..max_lag (lag-0 normalization).
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

/// Two-sided 95% whiteness band +-1.96/sqrt(n) displayed next to the ACF.
double acf_band(std::size_t n);

struct RegressionResult {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_se = 0.0;
    /// One-sided p-value for slope < 0 under iid-normal errors; indicative
    /// only, the error assumptions do not hold on real ratio series.
    double p_value = 1.0;
    std::vector<double> residuals;
};

/// OLS of the log-ratio on the volatility, with intercept.
RegressionResult regress_logratio_on_volatility(std::span<const double> log_ratio,
                                                std::span<const double> volatility);

/// Uniform bins over the realized volatility range, left-closed /
/// right-open with the last bin right-closed. Empty bins report count 0 and
/// a NaN mean.
struct BinReport {
    int n_bins = 5;
    std::vector<double> edges;        // n_bins + 1 uniform edges
    std::vector<std::size_t> counts;  // sums to the pair count
    std::vector<double> mean_ratio;   // NaN where count == 0
};

BinReport bin_ratios_by_volatility(std::span<const double> ratios,
                                   std::span<const double> volatility, int n_bins);

struct AnalysisOptions {
    double p = 0.0;
    double alpha = 0.95;
    double t_years = 1.0;
    int k = 1;
    int step_days = kDaysPerMonth;
    int n_bins = 5;

    void validate() const;
};

/// Paired (ratio, volatility) study on a common anchor grid. The volatility
/// window and the ratio denominator window cover the identical index range.
/// Pearson is taken on the log-ratio, Spearman on the raw ratio.
struct AnalysisReport {
    AnalysisOptions options;
    std::vector<std::size_t> anchors;
    std::vector<double> ratio;
    std::vector<double> log_ratio;       // NaN where the ratio is non-positive
    std::vector<double> volatility;      // annualized, same anchors
    std::size_t excluded_log_points = 0; // non-positive ratios, excluded from log statistics
    std::size_t dropped_points = 0;      // zero-denominator anchors
    double pearson = 0.0;
    double spearman = 0.0;
    double rmse = 0.0;
    RegressionResult regression;
    BinReport bins;
};

AnalysisReport correlate_ratio_volatility(const LossSeries& loss, const ReturnSeries& returns,
                                          const AnalysisOptions& options);

}  // namespace procyc
