#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "procyc/dates.hpp"

namespace procyc {

enum class Frequency { daily, weekly };

/// Business-time conventions: one year is 252 observations, one month 21.
inline constexpr int kDaysPerYear = 252;
inline constexpr int kDaysPerMonth = 21;
inline constexpr int kWeeksPerYear = 52;

/// Daily closing prices, strictly increasing dates, strictly positive closes.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> close;
    Frequency frequency = Frequency::daily;

    std::size_t size() const { return close.size(); }

    /// Validates invariants; throws std::invalid_argument naming the first
    /// offending row (0-based data row index).
    static PriceSeries create(std::vector<Date> dates, std::vector<double> close,
                              Frequency freq = Frequency::daily);
};

/// Log-returns X_i = ln(S_i / S_{i-1}); each dated at the later observation.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    Frequency frequency = Frequency::daily;

    std::size_t size() const { return values.size(); }
};

/// Losses L_i = -X_i, dates preserved.
struct LossSeries {
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Rolling window geometry: window length and anchor step, both in
/// observations (business days).
struct WindowSpec {
    int length_days = kDaysPerYear;
    int step_days = kDaysPerMonth;

    void validate() const;

    static WindowSpec years(double t_years, int step = kDaysPerMonth);
};

/// Half-open index range [begin, end); the anchor is `end`, so the window
/// holds exactly the observations strictly before the anchor.
struct Window {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t anchor() const { return end; }
    std::size_t length() const { return end - begin; }
};

ReturnSeries log_returns(const PriceSeries& prices);
LossSeries losses(const ReturnSeries& returns);

/// Keeps every stride-th observation (used to derive weekly series from
/// daily closes; stride 5).
PriceSeries resample_every(const PriceSeries& prices, std::size_t stride);

/// Anchors run n, n+step, ... up to and including the series length, so the
/// final window may be anchored one past the last observation.
/// Emits 1 + floor((n_obs - length) / step) windows.
std::vector<Window> rolling_windows(std::size_t n_obs, const WindowSpec& spec);

/// Date label for an anchor: the observation's date when the anchor indexes
/// a real observation, empty for the one-past-the-end anchor.
std::optional<Date> anchor_date(const std::vector<Date>& dates, std::size_t anchor);

}  // namespace procyc
