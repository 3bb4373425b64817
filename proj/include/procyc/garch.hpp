#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace procyc {

/// GARCH(1,1) parameters: sigma_t^2 = omega + alpha * X_t^2 + beta * sigma_{t-1}^2,
/// X_{t+1} = eps_t * sigma_t, with Gaussian innovations or Student-t(nu)
/// innovations standardized to unit variance (nu > 2).
struct GarchParams {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> student_nu;  // empty = Gaussian innovations
    double delta_t = 1.0;              // observation spacing in days

    bool stationary() const { return alpha + beta < 1.0; }
    double long_run_variance() const;

    void validate() const;

    GarchParams with_student(double nu) const;
};

inline constexpr int kGarchBurnIn = 252;  // one business year

struct GarchFitOptions {
    int burn_in = kGarchBurnIn;
    double objective_tol = 1e-8;
    std::size_t max_evaluations = 20000;
};

/// Simulates a return path. The variance recursion starts at the long-run
/// variance; the first `burn_in` draws are discarded. Bit-identical output
/// for identical (params, n, seed, burn_in).
std::vector<double> simulate(const GarchParams& params, std::size_t n, std::uint64_t seed,
                             std::size_t burn_in = kGarchBurnIn,
                             bool allow_nonstationary = false);

/// Gaussian quasi-maximum-likelihood fit under omega, alpha, beta > 0 and
/// alpha + beta <= 1 - 1e-6, from a deterministic multi-start grid with
/// variance-targeted omega. The likelihood filter is seeded with the
/// variance of the first year of data and skips that burn-in.
GarchParams fit_gaussian(std::span<const double> returns, const GarchFitOptions& options = {});

struct StudentNuFit {
    double nu = 0.0;
    bool at_upper_bound = false;  // Gaussian-like residuals push nu to the cap
};

inline constexpr double kNuLower = 2.5;
inline constexpr double kNuUpper = 50.0;

/// Holding (omega, alpha, beta) fixed, fits the Student tail exponent on the
/// residuals at loss observations only (X_{t+1} < 0), nu in [2.5, 50].
StudentNuFit fit_student_nu_on_losses(std::span<const double> returns,
                                      const GarchParams& gaussian_params,
                                      int burn_in = kGarchBurnIn);

/// Clustering decay time delta_t / |ln(alpha + beta)| in days.
double tau_cor(const GarchParams& params);

/// Per-observation average log-likelihood under the params' innovation law,
/// after the filter burn-in.
double normalized_log_likelihood(std::span<const double> returns, const GarchParams& params,
                                 int burn_in = kGarchBurnIn);

/// Empirical residuals eps_t = X_{t+1} / sigma_t; the variance recursion is
/// seeded with the first year's sample variance, and residuals are emitted
/// only after that burn-in (length = input - burn_in - 1).
std::vector<double> residuals(std::span<const double> returns, const GarchParams& params,
                              int burn_in = kGarchBurnIn);

/// Calibration summary: Gaussian fit, composite Student tail, clustering
/// time, likelihoods, simulated vs historical volatility.
struct GarchFitReport {
    GarchParams params;                       // Gaussian fit
    double nu = 0.0;                          // Student tail on losses
    bool nu_at_upper_bound = false;
    double tau_cor_days = 0.0;
    double normalized_ll_gaussian = 0.0;
    double normalized_ll_student = 0.0;       // composite model likelihood
    double mean_sim_volatility_pct = 0.0;     // annualized std, mean over replications
    double historical_volatility_pct = 0.0;   // annualized std of the input
    std::size_t replications = 0;
};

struct GarchReportOptions {
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
    GarchFitOptions fit;
};

GarchFitReport fit_report(std::span<const double> returns, const GarchReportOptions& options);

/// Annualized standard-deviation volatility of a return sample, in percent.
double annualized_std_volatility_pct(std::span<const double> returns);

}  // namespace procyc
