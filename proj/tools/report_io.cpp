#include "report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace procyc::cli {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.parent_path() / (".tmp-" + path.filename().string());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string num(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string num2(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string param(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) {
        throw std::logic_error("csv row width mismatch");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) text_ += ',';
        text_ += fields[i];
    }
    text_ += '\n';
}

std::string WideTable::render_csv(bool with_avg) const {
    std::string out = corner;
    for (const auto& c : columns) out += "," + c;
    const bool avg = with_avg && columns.size() >= 2;
    if (avg) out += ",avg,sd";
    out += '\n';
    for (std::size_t r = 0; r < row_keys.size(); ++r) {
        out += row_keys[r];
        double acc = 0.0;
        std::size_t n = 0;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const double v = values[r][c];
            out += "," + num2(v);
            if (!std::isnan(v)) {
                acc += v;
                ++n;
            }
        }
        if (avg) {
            if (n > 0) {
                const double mean = acc / static_cast<double>(n);
                double ss = 0.0;
                for (std::size_t c = 0; c < columns.size(); ++c) {
                    if (!std::isnan(values[r][c])) {
                        ss += (values[r][c] - mean) * (values[r][c] - mean);
                    }
                }
                const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
                out += "," + num2(mean) + "," + num2(sd);
            } else {
                out += ",,";
            }
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const RegressionResult& r) {
    return {{"intercept", r.intercept},
            {"slope", r.slope},
            {"slope_se", r.slope_se},
            {"p_value_slope_negative", r.p_value}};
}

nlohmann::json to_json(const BinReport& b) {
    nlohmann::json bins = nlohmann::json::array();
    for (std::size_t i = 0; i < b.counts.size(); ++i) {
        nlohmann::json bin;
        bin["lo"] = b.edges[i];
        bin["hi"] = b.edges[i + 1];
        bin["count"] = b.counts[i];
        if (std::isnan(b.mean_ratio[i])) {
            bin["mean_ratio"] = nullptr;
        } else {
            bin["mean_ratio"] = b.mean_ratio[i];
        }
        bins.push_back(bin);
    }
    return {{"n_bins", b.n_bins}, {"bins", bins}};
}

nlohmann::json to_json(const AnalysisReport& report) {
    nlohmann::json j;
    j["p"] = report.options.p;
    j["alpha"] = report.options.alpha;
    j["t_years"] = report.options.t_years;
    j["k"] = report.options.k;
    j["step_days"] = report.options.step_days;
    j["n_pairs"] = report.ratio.size();
    j["excluded_log_points"] = report.excluded_log_points;
    j["dropped_points"] = report.dropped_points;
    j["pearson"] = report.pearson;
    j["spearman"] = report.spearman;
    j["rmse"] = report.rmse;
    j["regression"] = to_json(report.regression);
    j["bins"] = to_json(report.bins);
    j["anchors"] = report.anchors;
    j["ratio"] = report.ratio;
    j["volatility"] = report.volatility;
    return j;
}

nlohmann::json to_json(const GarchParams& p) {
    nlohmann::json j;
    j["omega"] = p.omega;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["delta_t"] = p.delta_t;
    if (p.student_nu) {
        j["innovation"] = "student";
        j["nu"] = *p.student_nu;
    } else {
        j["innovation"] = "gaussian";
    }
    return j;
}

nlohmann::json to_json(const GarchFitReport& report) {
    nlohmann::json j;
    j["params"] = to_json(report.params);
    j["alpha_plus_beta"] = report.params.alpha + report.params.beta;
    j["nu_on_losses"] = report.nu;
    j["nu_at_upper_bound"] = report.nu_at_upper_bound;
    j["tau_cor_days"] = report.tau_cor_days;
    j["normalized_ll_gaussian"] = report.normalized_ll_gaussian;
    j["normalized_ll_student"] = report.normalized_ll_student;
    j["mean_sim_volatility_pct"] = report.mean_sim_volatility_pct;
    j["historical_volatility_pct"] = report.historical_volatility_pct;
    j["replications"] = report.replications;
    return j;
}

nlohmann::json to_json(const McCell& cell) {
    nlohmann::json j;
    j["alpha"] = cell.alpha;
    j["p"] = cell.p;
    j["k"] = cell.k;
    j["pearson_mean"] = cell.pearson.mean;
    j["pearson_sd"] = std::isnan(cell.pearson.sd) ? nlohmann::json() : nlohmann::json(cell.pearson.sd);
    j["spearman_mean"] = cell.spearman.mean;
    j["spearman_sd"] = std::isnan(cell.spearman.sd) ? nlohmann::json() : nlohmann::json(cell.spearman.sd);
    j["usable_replications"] = cell.pearson_reps.size();
    j["unusable_replications"] = cell.unusable_replications;
    j["bracketed"] = cell.bracketed;
    j["negative_fraction"] = cell.negative_fraction;
    j["negative_confidence"] = cell.negative_confidence;
    return j;
}

nlohmann::json to_json(const McResult& result, bool include_replication_values) {
    nlohmann::json j;
    j["generator"] = result.generator;
    j["path_length"] = result.config.path_length;
    j["replications"] = result.config.replications;
    j["window_days"] = result.config.window_days;
    j["step_days"] = result.config.step_days;
    j["master_seed"] = result.config.master_seed;
    j["index_names"] = result.index_names;
    j["cells"] = nlohmann::json::array();
    for (const auto& cell : result.cells) {
        auto cj = to_json(cell);
        if (!result.index_names.empty()) {
            cj["pearson_index_means"] = cell.pearson_index_means;
            cj["spearman_index_means"] = cell.spearman_index_means;
        }
        if (include_replication_values) {
            cj["pearson_replications"] = cell.pearson_reps;
            cj["spearman_replications"] = cell.spearman_reps;
        }
        j["cells"].push_back(cj);
    }
    return j;
}

}  // namespace procyc::cli
