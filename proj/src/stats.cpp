#include "procyc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "procyc/mathutil.hpp"
#include "procyc/quantile.hpp"
#include "procyc/volatility.hpp"

namespace procyc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_pair_lengths(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("correlation: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("correlation: need at least 3 pairs");
}

bool is_constant(std::span<const double> x) {
    for (double v : x) {
        if (v != x.front()) return false;
    }
    return true;
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t m = i; m <= j; ++m) ranks[idx[m]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

void AnalysisOptions::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(p >= 0.0)) throw std::invalid_argument("p must be non-negative");
    if (!(t_years > 0.0)) throw std::invalid_argument("T must be positive");
    if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
    if (step_days < 1) throw std::invalid_argument("step must be >= 1");
    if (n_bins < 2) throw std::invalid_argument("n_bins must be >= 2");
}

LookforwardSeries lookforward_ratios(const LossSeries& loss, double p, double alpha,
                                     double t_years, int step_days) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(p >= 0.0)) throw std::invalid_argument("p must be non-negative");
    const auto n_past = static_cast<std::size_t>(std::lround(t_years * kDaysPerYear));
    const std::size_t n_future = kDaysPerYear;  // the reference risk is always one year
    if (n_past < 2) throw std::invalid_argument("T too short: denominator window below 2 days");
    if (step_days < 1) throw std::invalid_argument("step must be >= 1");
    const std::size_t n_obs = loss.size();
    if (n_obs < n_past + n_future) {
        throw std::invalid_argument("series too short for one look-forward ratio (need " +
                                    std::to_string(n_past + n_future) + " observations)");
    }

    LookforwardSeries out;
    out.p = p;
    out.alpha = alpha;
    out.t_years = t_years;
    out.step_days = step_days;
    const double* data = loss.values.data();
    for (std::size_t t = n_past; t + n_future <= n_obs;
         t += static_cast<std::size_t>(step_days)) {
        const std::span<const double> past(data + (t - n_past), n_past);
        const std::span<const double> future(data + t, n_future);
        const double denom = weighted_quantile(past, alpha, p);
        const double numer = empirical_quantile(future, alpha);
        if (denom == 0.0) {
            ++out.dropped_count;
            continue;
        }
        RatioPoint point;
        point.anchor_index = t;
        point.anchor_date = anchor_date(loss.dates, t);
        point.numerator = numer;
        point.denominator = denom;
        point.ratio = numer / denom;
        point.log_defined = point.ratio > 0.0;
        point.log_ratio = point.log_defined ? std::log(point.ratio) : kNan;
        out.points.push_back(point);
    }
    return out;
}

double rmse_values(std::span<const double> ratios) {
    if (ratios.empty()) throw std::invalid_argument("rmse: empty input");
    double acc = 0.0;
    for (double r : ratios) acc += (r - 1.0) * (r - 1.0);
    return std::sqrt(acc / static_cast<double>(ratios.size()));
}

double rmse(std::span<const RatioPoint> ratios) {
    if (ratios.empty()) throw std::invalid_argument("rmse: empty input");
    double acc = 0.0;
    for (const RatioPoint& pt : ratios) acc += (pt.ratio - 1.0) * (pt.ratio - 1.0);
    return std::sqrt(acc / static_cast<double>(ratios.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    check_pair_lengths(x, y);
    if (is_constant(x) || is_constant(y)) {
        throw std::invalid_argument("pearson: undefined for constant input");
    }
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_pair_lengths(x, y);
    if (is_constant(x) || is_constant(y)) {
        throw std::invalid_argument("spearman: undefined for constant input");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

std::pair<double, double> fisher_ci(double r, std::size_t n, double level) {
    if (!(std::abs(r) < 1.0)) throw std::invalid_argument("fisher_ci: require |r| < 1");
    if (n < 4) throw std::invalid_argument("fisher_ci: require n >= 4");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("fisher_ci: bad level");
    const double z = inverse_normal_cdf(0.5 * (1.0 + level));
    const double half_width = z / std::sqrt(static_cast<double>(n - 3));
    const double center = std::atanh(r);
    return {std::tanh(center - half_width), std::tanh(center + half_width)};
}

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
    if (max_lag == 0) throw std::invalid_argument("acf: max_lag must be positive");
    if (series.size() <= max_lag + 1) throw std::invalid_argument("acf: series too short");
    if (is_constant(series)) throw std::invalid_argument("acf: undefined for constant series");
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    c0 /= static_cast<double>(n);
    std::vector<double> out;
    out.reserve(max_lag);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double ck = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t) {
            ck += (series[t] - mean) * (series[t + lag] - mean);
        }
        ck /= static_cast<double>(n);
        out.push_back(ck / c0);
    }
    return out;
}

double acf_band(std::size_t n) {
    if (n == 0) throw std::invalid_argument("acf_band: empty series");
    return 1.959963984540054 / std::sqrt(static_cast<double>(n));
}

RegressionResult regress_logratio_on_volatility(std::span<const double> log_ratio,
                                                std::span<const double> volatility) {
    check_pair_lengths(log_ratio, volatility);
    if (is_constant(volatility)) {
        throw std::invalid_argument("regression: degenerate (constant) regressor");
    }
    const std::size_t n = log_ratio.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += volatility[i];
        my += log_ratio[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (volatility[i] - mx) * (log_ratio[i] - my);
        sxx += (volatility[i] - mx) * (volatility[i] - mx);
    }
    RegressionResult res;
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    res.residuals.resize(n);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        res.residuals[i] = log_ratio[i] - res.intercept - res.slope * volatility[i];
        rss += res.residuals[i] * res.residuals[i];
    }
    const double sigma2 = rss / static_cast<double>(n - 2);
    res.slope_se = std::sqrt(sigma2 / sxx);
    if (res.slope_se > 0.0) {
        res.p_value = student_t_cdf(res.slope / res.slope_se, static_cast<double>(n - 2));
    } else {
        res.p_value = res.slope < 0.0 ? 0.0 : 1.0;  // exact fit
    }
    return res;
}

BinReport bin_ratios_by_volatility(std::span<const double> ratios,
                                   std::span<const double> volatility, int n_bins) {
    if (ratios.size() != volatility.size()) {
        throw std::invalid_argument("binning: length mismatch");
    }
    if (n_bins < 2) throw std::invalid_argument("binning: need at least 2 bins");
    if (ratios.size() < static_cast<std::size_t>(n_bins)) {
        throw std::invalid_argument("binning: fewer points than bins");
    }
    const auto [lo_it, hi_it] = std::minmax_element(volatility.begin(), volatility.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(lo < hi)) throw std::invalid_argument("binning: degenerate volatility range");

    BinReport report;
    report.n_bins = n_bins;
    report.edges.resize(static_cast<std::size_t>(n_bins) + 1);
    for (int b = 0; b <= n_bins; ++b) {
        report.edges[static_cast<std::size_t>(b)] =
            lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(n_bins);
    }
    report.counts.assign(static_cast<std::size_t>(n_bins), 0);
    std::vector<double> sums(static_cast<std::size_t>(n_bins), 0.0);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        auto b = static_cast<long>(std::floor((volatility[i] - lo) / (hi - lo) *
                                              static_cast<double>(n_bins)));
        if (b < 0) b = 0;
        if (b >= n_bins) b = n_bins - 1;  // right-closed last bin
        ++report.counts[static_cast<std::size_t>(b)];
        sums[static_cast<std::size_t>(b)] += ratios[i];
    }
    report.mean_ratio.resize(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        report.mean_ratio[ub] =
            report.counts[ub] > 0 ? sums[ub] / static_cast<double>(report.counts[ub]) : kNan;
    }
    return report;
}

AnalysisReport correlate_ratio_volatility(const LossSeries& loss, const ReturnSeries& returns,
                                          const AnalysisOptions& options) {
    options.validate();
    if (loss.size() != returns.size()) {
        throw std::invalid_argument("correlate: losses and returns must share one grid");
    }
    const auto ratios =
        lookforward_ratios(loss, options.p, options.alpha, options.t_years, options.step_days);
    const auto n_past = static_cast<std::size_t>(std::lround(options.t_years * kDaysPerYear));

    AnalysisReport report;
    report.options = options;
    report.dropped_points = ratios.dropped_count;
    report.anchors.reserve(ratios.points.size());
    for (const RatioPoint& pt : ratios.points) {
        // The volatility window is the identical index range as the ratio
        // denominator window [t-T, t).
        const std::span<const double> window(returns.values.data() + (pt.anchor_index - n_past),
                                             n_past);
        const double vol =
            annualize(sample_volatility(window, options.k), static_cast<int>(n_past));
        report.anchors.push_back(pt.anchor_index);
        report.ratio.push_back(pt.ratio);
        report.log_ratio.push_back(pt.log_ratio);
        report.volatility.push_back(vol);
        if (!pt.log_defined) ++report.excluded_log_points;
    }

    std::vector<double> lr_defined, vol_defined;
    lr_defined.reserve(report.ratio.size());
    vol_defined.reserve(report.ratio.size());
    for (std::size_t i = 0; i < report.ratio.size(); ++i) {
        if (std::isfinite(report.log_ratio[i])) {
            lr_defined.push_back(report.log_ratio[i]);
            vol_defined.push_back(report.volatility[i]);
        }
    }
    if (lr_defined.size() < 3) {
        throw std::invalid_argument("correlate: fewer than 3 usable pairs");
    }
    report.pearson = pearson(lr_defined, vol_defined);
    report.spearman = spearman(report.ratio, report.volatility);
    report.rmse = rmse_values(report.ratio);
    report.regression = regress_logratio_on_volatility(lr_defined, vol_defined);
    report.bins = bin_ratios_by_volatility(report.ratio, report.volatility, options.n_bins);
    return report;
}

}  // namespace procyc
