#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "procyc/garch.hpp"

namespace procyc {

/// Reference correlations of the (log quantile ratio, MAD volatility)
/// pipeline on iid samples, estimated by Monte Carlo for a Gaussian law and
/// Student laws nu = 4..7. Centers of the iid confidence intervals the
/// filtered residuals are compared against.
struct IidPipelineCenters {
    std::vector<std::string> laws;    // "gaussian", "student(4)", ...
    std::vector<double> alphas;
    std::vector<std::vector<double>> centers;  // [law][alpha]
    std::size_t path_length = 0;
    std::size_t replications = 0;
};

struct IidCenterOptions {
    std::vector<double> alphas{0.95, 0.975, 0.99, 0.995};
    std::size_t replications = 300;
    int window_days = 252;
    int step_days = 21;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

IidPipelineCenters compute_iid_pipeline_centers(std::size_t path_length,
                                                const IidCenterOptions& options);

/// Correlation of the monthly rolling pipeline (p = 0, T = 1y, MAD) on a
/// plain value series.
double pipeline_pearson(std::span<const double> values, double alpha, int window_days = 252,
                        int step_days = 21);

struct ResidualCi {
    std::string law;
    double center = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool contains_residual = false;
    bool contains_data = false;
};

struct ResidualCorrRow {
    double alpha = 0.0;
    double data_corr = 0.0;
    double residual_corr = 0.0;
    std::vector<ResidualCi> cis;
};

/// Residual study: moments, |residual| autocorrelation with the whiteness
/// band, and the pipeline correlation of the residuals against iid Fisher
/// intervals. The Fisher sample size is the number of *independent* year
/// blocks the anchor grid spans, not the (strongly dependent) monthly pair
/// count.
struct ResidualDiagnostics {
    double mean = 0.0;
    double sd = 0.0;
    std::vector<double> abs_acf;  // lags 1..max_lag
    double acf_band_95 = 0.0;
    std::vector<ResidualCorrRow> rows;
    std::size_t residual_length = 0;
    std::size_t monthly_pairs = 0;
    std::size_t fisher_n = 0;
};

struct ResidualDiagOptions {
    std::size_t max_acf_lag = 100;
    int window_days = 252;
    int step_days = 21;
    double ci_level = 0.95;
};

ResidualDiagnostics residual_diagnostics(std::span<const double> returns,
                                         const GarchParams& params,
                                         const IidPipelineCenters& centers,
                                         const ResidualDiagOptions& options = {});

}  // namespace procyc
