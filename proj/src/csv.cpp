#include "procyc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace procyc {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    const auto is_space = [](unsigned char c) { return c == ' ' || c == '\r' || c == '\t'; };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
}

}  // namespace

PriceSeries load_price_series(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open price file: " + path.string());
    }

    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw std::runtime_error("empty price file: " + path.string());
    }
    const char delim = header_line.find('\t') != std::string::npos ? '\t' : ',';

    auto header = split(header_line, delim);
    for (auto& h : header) h = trim(h);
    const auto find_col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("column '" + name + "' not found in header of " +
                                     path.string());
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_col = find_col(schema.date_column);
    const std::size_t close_col = find_col(schema.close_column);

    std::vector<Date> dates;
    std::vector<double> closes;
    std::string line;
    std::size_t row = 0;  // 0-based data row, header excluded
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            ++row;
            continue;
        }
        auto fields = split(line, delim);
        if (fields.size() <= std::max(date_col, close_col)) {
            throw std::runtime_error("row " + std::to_string(row) + ": too few columns");
        }
        const std::string date_text = trim(fields[date_col]);
        const std::string close_text = trim(fields[close_col]);
        if (close_text.empty()) {
            throw std::runtime_error("row " + std::to_string(row) + ": missing close");
        }
        Date date;
        try {
            date = Date::parse(date_text);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("row " + std::to_string(row) + ": " + e.what());
        }
        double close = 0.0;
        const auto [ptr, ec] =
            std::from_chars(close_text.data(), close_text.data() + close_text.size(), close);
        if (ec != std::errc{} || ptr != close_text.data() + close_text.size()) {
            throw std::runtime_error("row " + std::to_string(row) + ": unparseable close '" +
                                     close_text + "'");
        }
        if (!(close > 0.0)) {
            throw std::runtime_error("row " + std::to_string(row) + ": non-positive close");
        }
        if (!dates.empty() && !(dates.back() < date)) {
            throw std::runtime_error("row " + std::to_string(row) + ": non-monotone dates");
        }
        dates.push_back(date);
        closes.push_back(close);
        ++row;
    }
    return PriceSeries::create(std::move(dates), std::move(closes));
}

}  // namespace procyc
