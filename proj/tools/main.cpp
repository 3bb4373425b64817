#include <CLI11.hpp>

#include "commands.hpp"
#include "procyc/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Rolling quantile risk analytics: weighted sample-quantile processes, "
                 "look-forward ratios conditioned on realized volatility, GARCH(1,1) "
                 "calibration and Monte Carlo experiments"};
    app.set_version_flag("--version", procyc::kVersion);
    app.require_subcommand(1);

    procyc::cli::CommonOptions common;
    procyc::cli::SqpOptions sqp;
    procyc::cli::ProcyclicalityOptions pro;
    procyc::cli::FitGarchOptions fit;
    procyc::cli::ResidualCheckOptions resid;
    procyc::cli::ExperimentOptions exper;
    procyc::cli::BinsOptions bins;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", common.out_dir, "Output directory")->required();
        cmd->add_option("--seed", common.seed, "Master seed");
        cmd->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    };

    auto* c_sqp = app.add_subcommand("sqp", "Rolling weighted quantile series and summary");
    add_common(c_sqp);
    c_sqp->add_option("--input", sqp.input, "Price file (csv/tsv)")->required();
    c_sqp->add_option("--date-column", sqp.schema.date_column, "Date column name");
    c_sqp->add_option("--close-column", sqp.schema.close_column, "Close column name");
    c_sqp->add_option("--p", sqp.p_values, "Weight exponents");
    c_sqp->add_option("--alpha", sqp.alphas, "Quantile thresholds");
    c_sqp->add_option("--T-years", sqp.t_years, "Window length in years");
    c_sqp->add_option("--step-days", sqp.step_days, "Anchor step in business days");
    c_sqp->add_flag("--weekly", sqp.weekly, "Resample to weekly (every 5th close)");

    auto* c_pro = app.add_subcommand(
        "procyclicality", "Look-forward ratio vs volatility: correlations, regression, bins");
    add_common(c_pro);
    c_pro->add_option("--input", pro.inputs, "Price file(s)")->required();
    c_pro->add_option("--date-column", pro.schema.date_column, "Date column name");
    c_pro->add_option("--close-column", pro.schema.close_column, "Close column name");
    c_pro->add_option("--p", pro.p_values, "Weight exponents");
    c_pro->add_option("--alpha", pro.alphas, "Quantile thresholds");
    c_pro->add_option("--T-years", pro.t_years, "Window length in years");
    c_pro->add_option("--k", pro.k, "Volatility kind: 1 = MAD, 2 = std");
    c_pro->add_option("--step-days", pro.step_days, "Anchor step in business days");
    c_pro->add_option("--n-bins", pro.n_bins, "Volatility bins in the per-input report");
    c_pro->add_flag("--weekly", pro.weekly, "Resample to weekly (every 5th close)");

    auto* c_fit = app.add_subcommand("fit-garch", "Calibrate GARCH(1,1) and report");
    add_common(c_fit);
    c_fit->add_option("--input", fit.input, "Price file")->required();
    c_fit->add_option("--date-column", fit.schema.date_column, "Date column name");
    c_fit->add_option("--close-column", fit.schema.close_column, "Close column name");
    c_fit->add_option("--innovation-policy", fit.innovation_policy,
                      "gaussian | student-on-losses");
    c_fit->add_option("--replications", fit.replications,
                      "Simulation replications for the volatility check");

    auto* c_res = app.add_subcommand("residual-check",
                                     "GARCH residual diagnostics vs iid confidence intervals");
    add_common(c_res);
    c_res->add_option("--input", resid.input, "Price file")->required();
    c_res->add_option("--date-column", resid.schema.date_column, "Date column name");
    c_res->add_option("--close-column", resid.schema.close_column, "Close column name");
    c_res->add_option("--ci-replications", resid.ci_replications,
                      "iid Monte Carlo replications behind each interval center");
    c_res->add_option("--max-acf-lag", resid.max_acf_lag, "Lags of |residual| ACF");

    auto* c_exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment spec");
    add_common(c_exp);
    c_exp->add_option("--config", exper.config, "Experiment spec (json)")->required();

    auto* c_bins = app.add_subcommand("bins", "Average ratio per uniform volatility bin");
    add_common(c_bins);
    c_bins->add_option("--input", bins.inputs, "Price file(s)")->required();
    c_bins->add_option("--date-column", bins.schema.date_column, "Date column name");
    c_bins->add_option("--close-column", bins.schema.close_column, "Close column name");
    c_bins->add_option("--p", bins.p, "Weight exponent");
    c_bins->add_option("--alpha", bins.alpha, "Quantile threshold");
    c_bins->add_option("--T-years", bins.t_years, "Window length in years");
    c_bins->add_option("--k", bins.k, "Volatility kind: 1 = MAD, 2 = std");
    c_bins->add_option("--step-days", bins.step_days, "Anchor step in business days");
    c_bins->add_option("--n-bins", bins.n_bins, "Bin counts (may repeat)");

    CLI11_PARSE(app, argc, argv);

    exper.seed_overridden = c_exp->count("--seed") > 0;

    if (c_sqp->parsed()) return procyc::cli::cmd_sqp(sqp, common);
    if (c_pro->parsed()) return procyc::cli::cmd_procyclicality(pro, common);
    if (c_fit->parsed()) return procyc::cli::cmd_fit_garch(fit, common);
    if (c_res->parsed()) return procyc::cli::cmd_residual_check(resid, common);
    if (c_exp->parsed()) return procyc::cli::cmd_experiment(exper, common);
    if (c_bins->parsed()) return procyc::cli::cmd_bins(bins, common);
    return 1;
}
