#pragma once

#include <filesystem>
#include <string>

#include "procyc/series.hpp"

namespace procyc {

/// Column mapping for delimited price files. The file must carry a header
/// row; the delimiter (comma or tab) is detected from it.
struct CsvSchema {
    std::string date_column = "date";
    std::string close_column = "close";
};

/// Loads a (date, close) price series from a delimited text file.
/// Rows with missing, non-numeric or non-positive closes, unparseable dates,
/// or out-of-order dates fail the load with the offending row named.
PriceSeries load_price_series(const std::filesystem::path& path,
                              const CsvSchema& schema = {});

}  // namespace procyc
