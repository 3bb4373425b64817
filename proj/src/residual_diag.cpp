#include "procyc/residual_diag.hpp"

#include <cmath>
#include <stdexcept>

#include "procyc/montecarlo.hpp"
#include "procyc/random.hpp"
#include "procyc/stats.hpp"

namespace procyc {

IidPipelineCenters compute_iid_pipeline_centers(std::size_t path_length,
                                                const IidCenterOptions& options) {
    IidPipelineCenters out;
    out.alphas = options.alphas;
    out.path_length = path_length;
    out.replications = options.replications;

    std::vector<IidSpec> specs;
    specs.push_back(IidSpec{});  // standard normal
    out.laws.emplace_back("gaussian");
    for (double nu : {4.0, 5.0, 6.0, 7.0}) {
        IidSpec s;
        s.law = IidSpec::Law::student;
        s.nu = nu;
        specs.push_back(s);
        out.laws.push_back("student(" + std::to_string(static_cast<int>(nu)) + ")");
    }

    McConfig cfg;
    cfg.path_length = path_length;
    cfg.replications = options.replications;
    cfg.window_days = options.window_days;
    cfg.step_days = options.step_days;
    cfg.alphas = options.alphas;
    cfg.p_values = {0.0};
    cfg.k_values = {1};
    cfg.threads = options.threads;

    for (std::size_t li = 0; li < specs.size(); ++li) {
        cfg.master_seed = Rng::derive(options.seed, li);
        const McResult res = run_iid_experiment(specs[li], cfg);
        std::vector<double> centers(options.alphas.size());
        for (const McCell& cell : res.cells) {
            for (std::size_t ai = 0; ai < options.alphas.size(); ++ai) {
                if (cell.alpha == options.alphas[ai]) centers[ai] = cell.pearson.mean;
            }
        }
        out.centers.push_back(std::move(centers));
    }
    return out;
}

double pipeline_pearson(std::span<const double> values, double alpha, int window_days,
                        int step_days) {
    ReturnSeries returns;
    returns.values.assign(values.begin(), values.end());
    LossSeries loss;
    loss.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) loss.values[i] = -values[i];
    AnalysisOptions opts;
    opts.p = 0.0;
    opts.alpha = alpha;
    opts.t_years = static_cast<double>(window_days) / kDaysPerYear;
    opts.k = 1;
    opts.step_days = step_days;
    return correlate_ratio_volatility(loss, returns, opts).pearson;
}

ResidualDiagnostics residual_diagnostics(std::span<const double> returns,
                                         const GarchParams& params,
                                         const IidPipelineCenters& centers,
                                         const ResidualDiagOptions& options) {
    ResidualDiagnostics diag;
    const auto res = residuals(returns, params);
    diag.residual_length = res.size();

    double mean = 0.0;
    for (double e : res) mean += e;
    mean /= static_cast<double>(res.size());
    double ss = 0.0;
    for (double e : res) ss += (e - mean) * (e - mean);
    diag.mean = mean;
    diag.sd = std::sqrt(ss / static_cast<double>(res.size() - 1));

    std::vector<double> abs_res(res.size());
    for (std::size_t i = 0; i < res.size(); ++i) abs_res[i] = std::abs(res[i]);
    const std::size_t max_lag = std::min(options.max_acf_lag, res.size() - 2);
    diag.abs_acf = acf(abs_res, max_lag);
    diag.acf_band_95 = acf_band(res.size());

    // Monthly anchor count of the residual pipeline, then the number of
    // disjoint year blocks it spans; the Fisher interval assumes that many
    // independent pairs.
    const auto window = static_cast<std::size_t>(options.window_days);
    const auto future = static_cast<std::size_t>(kDaysPerYear);
    if (res.size() < window + future) {
        throw std::invalid_argument("residual_diagnostics: residual series too short");
    }
    diag.monthly_pairs =
        (res.size() - window - future) / static_cast<std::size_t>(options.step_days) + 1;
    diag.fisher_n = diag.monthly_pairs < 2
                        ? diag.monthly_pairs
                        : (diag.monthly_pairs - 1) * static_cast<std::size_t>(options.step_days) /
                                  window +
                              1;

    for (std::size_t ai = 0; ai < centers.alphas.size(); ++ai) {
        const double alpha = centers.alphas[ai];
        ResidualCorrRow row;
        row.alpha = alpha;
        row.data_corr =
            pipeline_pearson(returns, alpha, options.window_days, options.step_days);
        row.residual_corr =
            pipeline_pearson(res, alpha, options.window_days, options.step_days);
        for (std::size_t li = 0; li < centers.laws.size(); ++li) {
            ResidualCi ci;
            ci.law = centers.laws[li];
            ci.center = centers.centers[li][ai];
            const auto [lo, hi] = fisher_ci(ci.center, diag.fisher_n, options.ci_level);
            ci.lo = lo;
            ci.hi = hi;
            ci.contains_residual = lo <= row.residual_corr && row.residual_corr <= hi;
            ci.contains_data = lo <= row.data_corr && row.data_corr <= hi;
            row.cis.push_back(ci);
        }
        diag.rows.push_back(std::move(row));
    }
    return diag;
}

}  // namespace procyc
