#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "procyc/garch.hpp"
#include "procyc/series.hpp"

namespace procyc::testsupport {

/// Parameter set used throughout the simulation checks (the "reference
/// index" calibration of the experiment configs).
inline GarchParams usa_params() {
    GarchParams p;
    p.omega = 1.70e-6;
    p.alpha = 0.099;
    p.beta = 0.888;
    return p;
}

/// Business-day labelled price series whose log-returns equal `returns`.
PriceSeries prices_from_returns(const std::vector<double>& returns, double s0 = 100.0,
                                int start_year = 1990);

/// Writes a (date, close) csv usable by load_price_series; returns the path.
std::filesystem::path write_price_csv(const std::filesystem::path& dir,
                                      const std::string& name,
                                      const PriceSeries& prices);

/// Temp directory under the system tmp root, unique per call.
std::filesystem::path make_temp_dir(const std::string& tag);

}  // namespace procyc::testsupport
