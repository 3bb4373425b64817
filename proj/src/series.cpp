#include "procyc/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace procyc {

PriceSeries PriceSeries::create(std::vector<Date> dates, std::vector<double> close,
                                Frequency freq) {
    if (dates.size() != close.size()) {
        throw std::invalid_argument("price series: dates and closes differ in length");
    }
    for (std::size_t i = 0; i < close.size(); ++i) {
        if (!std::isfinite(close[i]) || close[i] <= 0.0) {
            throw std::invalid_argument("non-positive price on row " + std::to_string(i));
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            throw std::invalid_argument("non-monotone dates on row " + std::to_string(i));
        }
    }
    PriceSeries out;
    out.dates = std::move(dates);
    out.close = std::move(close);
    out.frequency = freq;
    return out;
}

void WindowSpec::validate() const {
    if (length_days < 2) throw std::invalid_argument("window length must be >= 2");
    if (step_days < 1) throw std::invalid_argument("window step must be >= 1");
}

WindowSpec WindowSpec::years(double t_years, int step) {
    if (!(t_years > 0.0)) throw std::invalid_argument("window size in years must be positive");
    WindowSpec spec;
    spec.length_days = static_cast<int>(std::lround(t_years * kDaysPerYear));
    spec.step_days = step;
    spec.validate();
    return spec;
}

ReturnSeries log_returns(const PriceSeries& prices) {
    if (prices.size() < 2) {
        throw std::invalid_argument("log_returns: need at least two prices");
    }
    ReturnSeries out;
    out.frequency = prices.frequency;
    out.values.reserve(prices.size() - 1);
    out.dates.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        out.values.push_back(std::log(prices.close[i] / prices.close[i - 1]));
        out.dates.push_back(prices.dates[i]);
    }
    return out;
}

LossSeries losses(const ReturnSeries& returns) {
    LossSeries out;
    out.dates = returns.dates;
    out.values.reserve(returns.size());
    for (double x : returns.values) out.values.push_back(-x);
    return out;
}

PriceSeries resample_every(const PriceSeries& prices, std::size_t stride) {
    if (stride == 0) throw std::invalid_argument("resample stride must be positive");
    PriceSeries out;
    out.frequency = stride == 5 ? Frequency::weekly : prices.frequency;
    for (std::size_t i = 0; i < prices.size(); i += stride) {
        out.dates.push_back(prices.dates[i]);
        out.close.push_back(prices.close[i]);
    }
    return out;
}

std::vector<Window> rolling_windows(std::size_t n_obs, const WindowSpec& spec) {
    spec.validate();
    const auto n = static_cast<std::size_t>(spec.length_days);
    const auto step = static_cast<std::size_t>(spec.step_days);
    if (n_obs < n) {
        throw std::invalid_argument("series shorter than one window (" +
                                    std::to_string(n_obs) + " < " + std::to_string(n) + ")");
    }
    std::vector<Window> out;
    out.reserve((n_obs - n) / step + 1);
    for (std::size_t anchor = n; anchor <= n_obs; anchor += step) {
        out.push_back(Window{anchor - n, anchor});
    }
    return out;
}

std::optional<Date> anchor_date(const std::vector<Date>& dates, std::size_t anchor) {
    if (anchor < dates.size()) return dates[anchor];
    return std::nullopt;
}

}  // namespace procyc
