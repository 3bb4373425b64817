#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "manifest.hpp"
#include "procyc/garch.hpp"
#include "procyc/montecarlo.hpp"
#include "procyc/quantile.hpp"
#include "procyc/random.hpp"
#include "procyc/residual_diag.hpp"
#include "procyc/stats.hpp"
#include "procyc/volatility.hpp"
#include "report_io.hpp"

namespace procyc::cli {

namespace {

using nlohmann::json;

void ensure_out_dir(const CommonOptions& common) {
    if (common.out_dir.empty()) throw std::invalid_argument("--out-dir is required");
    std::filesystem::create_directories(common.out_dir);
}

ReturnSeries load_returns(const std::filesystem::path& input, const CsvSchema& schema,
                          bool weekly) {
    PriceSeries prices = load_price_series(input, schema);
    if (weekly) prices = resample_every(prices, 5);
    return log_returns(prices);
}

std::string stem_of(const std::filesystem::path& p) { return p.stem().string(); }

void write_manifest(RunManifest manifest, const json& config, const CommonOptions& common) {
    manifest.config = config;
    write_file_atomic(common.out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
}

std::string label_alpha(double alpha) { return num2(100.0 * alpha) + "%"; }

std::string label_p(double p) {
    std::ostringstream os;
    os << "p=" << p;
    return os.str();
}

json alphas_json(const std::vector<double>& v) { return json(v); }

}  // namespace

int cmd_sqp(const SqpOptions& options, const CommonOptions& common) {
    ReturnSeries returns;
    try {
        ensure_out_dir(common);
        returns = load_returns(options.input, options.schema, options.weekly);
    } catch (const std::exception& e) {
        std::cerr << "sqp: " << e.what() << "\n";
        return kInputError;
    }
    try {
        const LossSeries loss = losses(returns);
        CsvWriter series({"anchor_index", "anchor_date", "p", "alpha", "T_days", "value"});
        CsvWriter summary({"p", "alpha", "mean", "mean_pct"});
        std::map<double, std::map<double, double>> means;  // p -> alpha -> mean
        for (double p : options.p_values) {
            for (double alpha : options.alphas) {
                SqpConfig cfg;
                cfg.p = p;
                cfg.alpha = alpha;
                cfg.window = WindowSpec::years(options.t_years, options.step_days);
                const SqpSeries sqp = sqp_series(loss, cfg);
                double acc = 0.0;
                for (const auto& pt : sqp.points) {
                    series.row({std::to_string(pt.anchor_index),
                                pt.anchor_date ? pt.anchor_date->to_string() : "",
                                param(p), param(alpha), std::to_string(cfg.window.length_days),
                                num(pt.value)});
                    acc += pt.value;
                }
                const double mean = acc / static_cast<double>(sqp.points.size());
                means[p][alpha] = mean;
                summary.row({param(p), param(alpha), num(mean), num2(100.0 * mean)});
            }
        }
        series.save(common.out_dir / "sqp_series.csv");
        summary.save(common.out_dir / "sqp_summary.csv");

        // Threshold-discrimination ratio between the 99% and 95% levels.
        const bool have_pair = std::count(options.alphas.begin(), options.alphas.end(), 0.95) &&
                               std::count(options.alphas.begin(), options.alphas.end(), 0.99);
        if (have_pair) {
            CsvWriter ratios({"p", "ratio_sqp99_over_sqp95"});
            for (double p : options.p_values) {
                ratios.row({param(p), num(means[p][0.99] / means[p][0.95])});
            }
            ratios.save(common.out_dir / "sqp_ratio_summary.csv");
        }

        CsvWriter bench({"alpha", "unconditional_var"});
        for (double alpha : options.alphas) {
            bench.row({param(alpha), num(unconditional_var(loss, alpha))});
        }
        bench.save(common.out_dir / "sqp_benchmark.csv");

        auto manifest = make_manifest("sqp", common.seed);
        manifest.add_input(options.input);
        write_manifest(std::move(manifest),
                       json{{"p_values", options.p_values},
                            {"alphas", alphas_json(options.alphas)},
                            {"t_years", options.t_years},
                            {"step_days", options.step_days},
                            {"weekly", options.weekly}},
                       common);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "sqp: " << e.what() << "\n";
        return kNumericError;
    }
}

int cmd_procyclicality(const ProcyclicalityOptions& options, const CommonOptions& common) {
    std::vector<ReturnSeries> series;
    std::vector<std::string> names;
    try {
        ensure_out_dir(common);
        if (options.inputs.empty()) throw std::invalid_argument("at least one --input required");
        for (const auto& path : options.inputs) {
            series.push_back(load_returns(path, options.schema, options.weekly));
            names.push_back(stem_of(path));
        }
    } catch (const std::exception& e) {
        std::cerr << "procyclicality: " << e.what() << "\n";
        return kInputError;
    }
    try {
        CsvWriter tidy({"input", "p", "alpha", "T_years", "k", "n_pairs", "excluded_log",
                        "dropped", "pearson", "spearman", "rmse", "gamma_hat", "gamma_se",
                        "p_value"});
        // wide tables: rows (alpha, p), one column per input
        WideTable pearson_table, spearman_table;
        pearson_table.corner = spearman_table.corner = "alpha/p";
        pearson_table.columns = spearman_table.columns = names;

        for (double alpha : options.alphas) {
            for (double p : options.p_values) {
                pearson_table.row_keys.push_back(label_alpha(alpha) + " " + label_p(p));
                spearman_table.row_keys.push_back(label_alpha(alpha) + " " + label_p(p));
                pearson_table.values.emplace_back();
                spearman_table.values.emplace_back();
            }
        }

        for (std::size_t i = 0; i < series.size(); ++i) {
            const LossSeries loss = losses(series[i]);
            json reports = json::array();
            std::size_t row = 0;
            for (double alpha : options.alphas) {
                for (double p : options.p_values) {
                    AnalysisOptions opts;
                    opts.p = p;
                    opts.alpha = alpha;
                    opts.t_years = options.t_years;
                    opts.k = options.k;
                    opts.step_days = options.step_days;
                    opts.n_bins = options.n_bins;
                    const AnalysisReport report =
                        correlate_ratio_volatility(loss, series[i], opts);
                    reports.push_back(to_json(report));
                    tidy.row({names[i], param(p), param(alpha), param(options.t_years),
                              std::to_string(options.k), std::to_string(report.ratio.size()),
                              std::to_string(report.excluded_log_points),
                              std::to_string(report.dropped_points), num(report.pearson),
                              num(report.spearman), num(report.rmse),
                              num(report.regression.slope), num(report.regression.slope_se),
                              num(report.regression.p_value)});
                    pearson_table.values[row].push_back(report.pearson);
                    spearman_table.values[row].push_back(report.spearman);
                    ++row;
                }
            }
            write_file_atomic(common.out_dir / ("analysis_" + names[i] + ".json"),
                              reports.dump(2) + "\n");
        }
        tidy.save(common.out_dir / "procyclicality.csv");
        write_file_atomic(common.out_dir / "table_pearson.csv", pearson_table.render_csv());
        write_file_atomic(common.out_dir / "table_spearman.csv", spearman_table.render_csv());

        auto manifest = make_manifest("procyclicality", common.seed);
        for (const auto& path : options.inputs) manifest.add_input(path);
        write_manifest(std::move(manifest),
                       json{{"p_values", options.p_values},
                            {"alphas", options.alphas},
                            {"t_years", options.t_years},
                            {"k", options.k},
                            {"step_days", options.step_days},
                            {"n_bins", options.n_bins},
                            {"weekly", options.weekly}},
                       common);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "procyclicality: " << e.what() << "\n";
        return kNumericError;
    }
}

int cmd_fit_garch(const FitGarchOptions& options, const CommonOptions& common) {
    ReturnSeries returns;
    try {
        ensure_out_dir(common);
        if (options.innovation_policy != "gaussian" &&
            options.innovation_policy != "student-on-losses") {
            throw std::invalid_argument("innovation policy must be 'gaussian' or "
                                        "'student-on-losses'");
        }
        returns = load_returns(options.input, options.schema, false);
    } catch (const std::exception& e) {
        std::cerr << "fit-garch: " << e.what() << "\n";
        return kInputError;
    }
    try {
        GarchReportOptions ropts;
        ropts.replications = options.replications;
        ropts.seed = common.seed;
        ropts.threads = common.threads;
        const GarchFitReport report = fit_report(returns.values, ropts);

        json j = to_json(report);
        j["input"] = options.input.string();
        j["innovation_policy"] = options.innovation_policy;
        write_file_atomic(common.out_dir / "fit_report.json", j.dump(2) + "\n");

        const std::string name = stem_of(options.input);
        CsvWriter table({"quantity", name});
        table.row({"omega", num(report.params.omega)});
        table.row({"alpha", num(report.params.alpha)});
        table.row({"beta", num(report.params.beta)});
        table.row({"alpha_plus_beta", num(report.params.alpha + report.params.beta)});
        table.row({"tau_cor_days", num2(report.tau_cor_days)});
        table.row({"normalized_ll_gaussian", num2(report.normalized_ll_gaussian)});
        table.row({"sim_volatility_pct", num2(report.mean_sim_volatility_pct)});
        table.row({"historical_volatility_pct", num2(report.historical_volatility_pct)});
        if (options.innovation_policy == "student-on-losses") {
            table.row({"nu_on_losses", num2(report.nu)});
            table.row({"normalized_ll_student", num2(report.normalized_ll_student)});
        }
        table.save(common.out_dir / "fit_table.csv");

        auto manifest = make_manifest("fit-garch", common.seed);
        manifest.add_input(options.input);
        write_manifest(std::move(manifest),
                       json{{"innovation_policy", options.innovation_policy},
                            {"replications", options.replications}},
                       common);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "fit-garch: " << e.what() << "\n";
        return kNumericError;
    }
}

int cmd_residual_check(const ResidualCheckOptions& options, const CommonOptions& common) {
    ReturnSeries returns;
    try {
        ensure_out_dir(common);
        returns = load_returns(options.input, options.schema, false);
    } catch (const std::exception& e) {
        std::cerr << "residual-check: " << e.what() << "\n";
        return kInputError;
    }
    try {
        const GarchParams params = fit_gaussian(returns.values);
        const auto res = residuals(returns.values, params);

        IidCenterOptions copts;
        copts.replications = options.ci_replications;
        copts.seed = Rng::derive(common.seed, 0x1d);
        copts.threads = common.threads;
        const IidPipelineCenters centers = compute_iid_pipeline_centers(res.size(), copts);

        ResidualDiagOptions dopts;
        dopts.max_acf_lag = options.max_acf_lag;
        const ResidualDiagnostics diag =
            residual_diagnostics(returns.values, params, centers, dopts);

        CsvWriter stats({"quantity", "value"});
        stats.row({"residual_mean", num(diag.mean)});
        stats.row({"residual_sd", num(diag.sd)});
        stats.row({"residual_length", std::to_string(diag.residual_length)});
        stats.row({"monthly_pairs", std::to_string(diag.monthly_pairs)});
        stats.row({"fisher_n_independent", std::to_string(diag.fisher_n)});
        stats.save(common.out_dir / "residual_stats.csv");

        CsvWriter acf_csv({"lag", "acf_abs_residual", "band_95"});
        for (std::size_t lag = 1; lag <= diag.abs_acf.size(); ++lag) {
            acf_csv.row({std::to_string(lag), num(diag.abs_acf[lag - 1]),
                         num(diag.acf_band_95)});
        }
        acf_csv.save(common.out_dir / "residual_acf.csv");

        CsvWriter corr({"alpha", "law", "ci_center", "ci_lo", "ci_hi", "residual_corr",
                        "residual_in_ci", "data_corr", "data_in_ci"});
        for (const auto& row : diag.rows) {
            for (const auto& ci : row.cis) {
                corr.row({param(row.alpha), ci.law, num(ci.center), num(ci.lo), num(ci.hi),
                          num(row.residual_corr), ci.contains_residual ? "1" : "0",
                          num(row.data_corr), ci.contains_data ? "1" : "0"});
            }
        }
        corr.save(common.out_dir / "residual_correlations.csv");

        json j;
        j["params"] = to_json(params);
        j["residual_mean"] = diag.mean;
        j["residual_sd"] = diag.sd;
        j["fisher_n_independent"] = diag.fisher_n;
        write_file_atomic(common.out_dir / "residual_summary.json", j.dump(2) + "\n");

        auto manifest = make_manifest("residual-check", common.seed);
        manifest.add_input(options.input);
        write_manifest(std::move(manifest),
                       json{{"ci_replications", options.ci_replications},
                            {"max_acf_lag", options.max_acf_lag}},
                       common);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "residual-check: " << e.what() << "\n";
        return kNumericError;
    }
}

namespace {

// --- experiment spec parsing, with field paths in every complaint ---

template <typename T>
T require(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) {
        throw std::invalid_argument("experiment spec: missing field " + path + key);
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("experiment spec: bad value at " + path + key);
    }
}

template <typename T>
T optional_field(const json& j, const std::string& path, const std::string& key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("experiment spec: bad value at " + path + key);
    }
}

struct ParsedGenerator {
    bool is_garch = false;
    IidSpec iid;
    std::vector<GarchParams> garch;
    std::vector<std::string> names;
    std::string label;
};

ParsedGenerator parse_generator(const json& g, const std::string& path) {
    ParsedGenerator out;
    const auto kind = require<std::string>(g, path, "kind");
    if (kind == "normal" || kind == "student") {
        out.iid.law = kind == "normal" ? IidSpec::Law::normal : IidSpec::Law::student;
        out.iid.mu = optional_field<double>(g, path, "mu", 0.0);
        out.iid.sigma = optional_field<double>(g, path, "sigma", 1.0);
        if (kind == "student") out.iid.nu = require<double>(g, path, "nu");
        out.iid.validate();
        out.label = out.iid.label();
    } else if (kind == "garch") {
        if (!g.contains("parameter_sets") || !g.at("parameter_sets").is_array() ||
            g.at("parameter_sets").empty()) {
            throw std::invalid_argument("experiment spec: " + path +
                                        "parameter_sets must be a non-empty array");
        }
        std::size_t i = 0;
        for (const auto& ps : g.at("parameter_sets")) {
            const std::string p_path = path + "parameter_sets[" + std::to_string(i) + "].";
            GarchParams params;
            params.omega = require<double>(ps, p_path, "omega");
            params.alpha = require<double>(ps, p_path, "alpha");
            params.beta = require<double>(ps, p_path, "beta");
            if (ps.contains("nu") && !ps.at("nu").is_null()) {
                params.student_nu = require<double>(ps, p_path, "nu");
            }
            try {
                params.validate();
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("experiment spec: " + p_path.substr(0, p_path.size() - 1) +
                                            ": " + e.what());
            }
            out.garch.push_back(params);
            out.names.push_back(
                optional_field<std::string>(ps, p_path, "name", "set" + std::to_string(i)));
            ++i;
        }
        out.is_garch = true;
        out.label = "garch";
    } else {
        throw std::invalid_argument("experiment spec: " + path +
                                    "kind must be normal|student|garch");
    }
    return out;
}

void render_experiment_tables(const std::vector<McResult>& results,
                              const CommonOptions& common) {
    CsvWriter tidy({"generator", "index_count", "alpha", "p", "k", "pearson_mean",
                    "pearson_sd", "spearman_mean", "spearman_sd", "usable", "bracketed",
                    "negative_confidence"});
    for (const McResult& res : results) {
        for (const McCell& c : res.cells) {
            tidy.row({res.generator,
                      std::to_string(std::max<std::size_t>(1, res.index_names.size())),
                      param(c.alpha), param(c.p), std::to_string(c.k), num(c.pearson.mean),
                      num(c.pearson.sd), num(c.spearman.mean), num(c.spearman.sd),
                      std::to_string(c.pearson_reps.size()), c.bracketed ? "1" : "0",
                      num(c.negative_confidence)});
        }
    }
    tidy.save(common.out_dir / "experiment.csv");

    // Readable wide layout: rows (statistic, alpha, p); one column per
    // (generator, k); bracketed cells parenthesized, stars from the
    // replication-distribution percentile test.
    std::vector<std::string> columns;
    for (const McResult& res : results) {
        for (int k : res.config.k_values) {
            columns.push_back(res.generator + " k=" + std::to_string(k));
        }
    }
    std::ostringstream table;
    table << "statistic,alpha,p";
    for (const auto& c : columns) table << "," << c;
    table << "\n";
    const McConfig& cfg0 = results.front().config;
    for (const char* stat : {"pearson", "spearman"}) {
        for (double alpha : cfg0.alphas) {
            for (double p : cfg0.p_values) {
                table << stat << "," << param(alpha) << "," << param(p);
                for (const McResult& res : results) {
                    for (int k : res.config.k_values) {
                        const McCell* cell = nullptr;
                        for (const McCell& c : res.cells) {
                            if (c.alpha == alpha && c.p == p && c.k == k) cell = &c;
                        }
                        table << ",";
                        if (!cell) continue;
                        const bool is_pearson = std::string(stat) == "pearson";
                        const double v = is_pearson ? cell->pearson.mean : cell->spearman.mean;
                        std::string text = num2(v);
                        if (is_pearson && cell->bracketed) text = "(" + text + ")";
                        if (cell->negative_confidence >= 0.99) {
                            text += "**";
                        } else if (cell->negative_confidence >= 0.95) {
                            text += "*";
                        } else if (cell->negative_confidence >= 0.90) {
                            // no mark at the 90% level
                        } else if (cell->negative_confidence >= 0.85) {
                            text += "+";
                        } else {
                            text += " ns";
                        }
                        table << text;
                    }
                }
                table << "\n";
            }
        }
    }
    write_file_atomic(common.out_dir / "experiment_table.csv", table.str());
}

}  // namespace

int cmd_experiment(const ExperimentOptions& options, const CommonOptions& common) {
    json spec;
    std::vector<ParsedGenerator> generators;
    McConfig cfg;
    try {
        ensure_out_dir(common);
        std::ifstream in(options.config);
        if (!in) throw std::invalid_argument("cannot open spec: " + options.config.string());
        try {
            in >> spec;
        } catch (const json::exception& e) {
            throw std::invalid_argument("experiment spec: not valid JSON: " +
                                        std::string(e.what()));
        }
        if (spec.contains("generators")) {
            if (!spec.at("generators").is_array() || spec.at("generators").empty()) {
                throw std::invalid_argument(
                    "experiment spec: generators must be a non-empty array");
            }
            std::size_t i = 0;
            for (const auto& g : spec.at("generators")) {
                generators.push_back(
                    parse_generator(g, "generators[" + std::to_string(i) + "]."));
                ++i;
            }
        } else if (spec.contains("generator")) {
            generators.push_back(parse_generator(spec.at("generator"), "generator."));
        } else {
            throw std::invalid_argument(
                "experiment spec: missing field generator (or generators)");
        }
        cfg.path_length = optional_field<std::size_t>(spec, "", "path_length", 8000);
        cfg.replications = require<std::size_t>(spec, "", "replications");
        cfg.window_days = optional_field<int>(spec, "", "window_days", 252);
        cfg.step_days = optional_field<int>(spec, "", "step_days", 21);
        cfg.alphas = optional_field<std::vector<double>>(spec, "", "alphas", {0.95, 0.99});
        cfg.p_values = optional_field<std::vector<double>>(spec, "", "p_values", {0.0});
        cfg.k_values = optional_field<std::vector<int>>(spec, "", "k_values", {1});
        cfg.master_seed = optional_field<std::uint64_t>(spec, "", "master_seed", 1);
        if (options.seed_overridden) cfg.master_seed = common.seed;
        cfg.threads = common.threads;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "experiment: " << e.what() << "\n";
        return kInputError;
    }
    try {
        std::vector<McResult> results;
        for (const auto& gen : generators) {
            results.push_back(gen.is_garch
                                  ? run_garch_experiment(gen.garch, gen.names, cfg)
                                  : run_iid_experiment(gen.iid, cfg));
        }
        json out = json::array();
        for (const auto& res : results) out.push_back(to_json(res, false));
        write_file_atomic(common.out_dir / "result.json", out.dump(2) + "\n");
        render_experiment_tables(results, common);

        auto manifest = make_manifest("experiment", cfg.master_seed);
        manifest.add_input(options.config);
        write_manifest(std::move(manifest), spec, common);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "experiment: " << e.what() << "\n";
        return kNumericError;
    }
}

int cmd_bins(const BinsOptions& options, const CommonOptions& common) {
    std::vector<ReturnSeries> series;
    std::vector<std::string> names;
    try {
        ensure_out_dir(common);
        if (options.inputs.empty()) throw std::invalid_argument("at least one --input required");
        for (const auto& path : options.inputs) {
            series.push_back(load_returns(path, options.schema, false));
            names.push_back(stem_of(path));
        }
    } catch (const std::exception& e) {
        std::cerr << "bins: " << e.what() << "\n";
        return kInputError;
    }
    try {
        CsvWriter tidy({"input", "p", "alpha", "k", "n_bins", "bin", "lo", "hi", "count",
                        "mean_ratio"});
        for (int n_bins : options.n_bins) {
            WideTable wide;
            wide.corner = "bin";
            wide.columns = names;
            for (int b = 0; b < n_bins; ++b) {
                wide.row_keys.push_back(std::to_string(b + 1));
                wide.values.emplace_back();
            }
            for (std::size_t i = 0; i < series.size(); ++i) {
                const LossSeries loss = losses(series[i]);
                AnalysisOptions opts;
                opts.p = options.p;
                opts.alpha = options.alpha;
                opts.t_years = options.t_years;
                opts.k = options.k;
                opts.step_days = options.step_days;
                opts.n_bins = n_bins;
                const AnalysisReport report = correlate_ratio_volatility(loss, series[i], opts);
                for (int b = 0; b < n_bins; ++b) {
                    const auto ub = static_cast<std::size_t>(b);
                    tidy.row({names[i], param(options.p), param(options.alpha),
                              std::to_string(options.k), std::to_string(n_bins),
                              std::to_string(b + 1), num(report.bins.edges[ub]),
                              num(report.bins.edges[ub + 1]),
                              std::to_string(report.bins.counts[ub]),
                              num(report.bins.mean_ratio[ub])});
                    wide.values[ub].push_back(report.bins.mean_ratio[ub]);
                }
            }
            write_file_atomic(common.out_dir /
                                  ("table_bins_" + std::to_string(n_bins) + ".csv"),
                              wide.render_csv());
        }
        tidy.save(common.out_dir / "bins.csv");

        auto manifest = make_manifest("bins", common.seed);
        for (const auto& path : options.inputs) manifest.add_input(path);
        write_manifest(std::move(manifest),
                       json{{"p", options.p},
                            {"alpha", options.alpha},
                            {"t_years", options.t_years},
                            {"k", options.k},
                            {"step_days", options.step_days},
                            {"n_bins", options.n_bins}},
                       common);
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "bins: " << e.what() << "\n";
        return kNumericError;
    }
}

}  // namespace procyc::cli
