#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "procyc/csv.hpp"

namespace procyc::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNumericError = 3;

struct CommonOptions {
    std::filesystem::path out_dir;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct SqpOptions {
    std::filesystem::path input;
    CsvSchema schema;
    std::vector<double> p_values{0.0, 0.5, 1.0, 2.0};
    std::vector<double> alphas{0.95, 0.99};
    double t_years = 1.0;
    int step_days = 21;
    bool weekly = false;
};

struct ProcyclicalityOptions {
    std::vector<std::filesystem::path> inputs;
    CsvSchema schema;
    std::vector<double> p_values{0.0, 0.5, 1.0, 2.0};
    std::vector<double> alphas{0.95, 0.99};
    double t_years = 1.0;
    int k = 1;
    int step_days = 21;
    int n_bins = 5;
    bool weekly = false;
};

struct FitGarchOptions {
    std::filesystem::path input;
    CsvSchema schema;
    std::string innovation_policy = "student-on-losses";  // or "gaussian"
    std::size_t replications = 1000;
};

struct ResidualCheckOptions {
    std::filesystem::path input;
    CsvSchema schema;
    std::size_t ci_replications = 300;
    std::size_t max_acf_lag = 100;
};

struct ExperimentOptions {
    std::filesystem::path config;
    bool seed_overridden = false;
};

struct BinsOptions {
    std::vector<std::filesystem::path> inputs;
    CsvSchema schema;
    double p = 0.0;
    double alpha = 0.95;
    double t_years = 1.0;
    int k = 1;
    int step_days = 21;
    std::vector<int> n_bins{5, 10};
};

int cmd_sqp(const SqpOptions& options, const CommonOptions& common);
int cmd_procyclicality(const ProcyclicalityOptions& options, const CommonOptions& common);
int cmd_fit_garch(const FitGarchOptions& options, const CommonOptions& common);
int cmd_residual_check(const ResidualCheckOptions& options, const CommonOptions& common);
int cmd_experiment(const ExperimentOptions& options, const CommonOptions& common);
int cmd_bins(const BinsOptions& options, const CommonOptions& common);

}  // namespace procyc::cli
