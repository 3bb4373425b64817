#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "procyc/garch.hpp"

namespace procyc {

/// iid return generator: Normal(mu, sigma) or location-scale Student-t with
/// the Student part standardized to unit variance before scaling.
struct IidSpec {
    enum class Law { normal, student };
    Law law = Law::normal;
    double mu = 0.0;
    double sigma = 1.0;
    double nu = 5.0;

    void validate() const;
    std::string label() const;
};

/// Shared experiment geometry. Each replication simulates a path of
/// `path_length`, rolls the ratio/volatility pipeline monthly and records
/// the per-path Pearson and Spearman correlations.
struct McConfig {
    std::size_t path_length = 8000;
    std::size_t replications = 100;
    int window_days = 252;  // denominator and volatility window (252 * T)
    int step_days = 21;
    std::vector<double> alphas{0.95, 0.99};
    std::vector<double> p_values{0.0};
    std::vector<int> k_values{1};
    std::uint64_t master_seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct McCellStats {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation across the aggregation axis
    std::size_t n = 0;
};

/// One (alpha, p, k) cell of an experiment table.
struct McCell {
    double alpha = 0.0;
    double p = 0.0;
    int k = 1;
    McCellStats pearson;
    McCellStats spearman;
    std::vector<double> pearson_reps;   // index-major, one value per usable replication
    std::vector<double> spearman_reps;
    std::vector<double> pearson_index_means;  // one per parameter set (GARCH runs)
    std::vector<double> spearman_index_means;
    std::size_t unusable_replications = 0;
    /// Pearson lacks a finite-variance counterpart (Student k=2 with nu <= 4);
    /// reported values are bracketed.
    bool bracketed = false;
    double negative_fraction = 0.0;
    /// Highest two-sided confidence level in {.99,.95,.90,.85} at which the
    /// replication-distribution percentile interval lies below zero.
    double negative_confidence = 0.0;
};

struct McResult {
    std::string generator;
    McConfig config;
    std::vector<std::string> index_names;  // empty for iid runs
    std::vector<McCell> cells;
};

McResult run_iid_experiment(const IidSpec& spec, const McConfig& config);

McResult run_garch_experiment(std::span<const GarchParams> params,
                              std::span<const std::string> names, const McConfig& config);

}  // namespace procyc
