#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "procyc/garch.hpp"
#include "procyc/montecarlo.hpp"
#include "procyc/stats.hpp"

namespace procyc::cli {

/// Atomic file write: content lands under a temporary name and is renamed
/// into place, so readers never observe a half-written report.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Full-precision float field ("%.17g"); NaN renders as the empty field.
std::string num(double v);
/// Fixed two-decimal field, the table convention for percents/correlations.
std::string num2(double v);
/// Short field ("%.12g") for parameter columns like alpha and p.
std::string param(double v);

struct CsvWriter {
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& fields);
    std::string content() const { return text_; }
    void save(const std::filesystem::path& path) const { write_file_atomic(path, text_); }

  private:
    std::size_t width_;
    std::string text_;
};

/// Wide pivot: one row per row-key, one column per column-key, with an
/// avg (±sd) column appended when there are at least two columns.
struct WideTable {
    std::string corner;
    std::vector<std::string> columns;
    std::vector<std::string> row_keys;
    std::vector<std::vector<double>> values;  // [row][col]

    std::string render_csv(bool with_avg = true) const;
};

nlohmann::json to_json(const RegressionResult& r);
nlohmann::json to_json(const BinReport& b);
nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const GarchParams& p);
nlohmann::json to_json(const GarchFitReport& report);
nlohmann::json to_json(const McCell& cell);
nlohmann::json to_json(const McResult& result, bool include_replication_values);

}  // namespace procyc::cli
