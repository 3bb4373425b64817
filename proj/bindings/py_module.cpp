#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "procyc/garch.hpp"
#include "procyc/montecarlo.hpp"
#include "procyc/quantile.hpp"
#include "procyc/random.hpp"
#include "procyc/residual_diag.hpp"
#include "procyc/series.hpp"
#include "procyc/stats.hpp"
#include "procyc/version.hpp"
#include "procyc/volatility.hpp"

namespace py = pybind11;
using namespace procyc;

namespace {

ReturnSeries returns_from_values(const std::vector<double>& values) {
    ReturnSeries r;
    r.values = values;
    return r;
}

AnalysisReport analyze_values(const std::vector<double>& returns, double p, double alpha,
                              double t_years, int k, int step_days, int n_bins) {
    AnalysisOptions opts;
    opts.p = p;
    opts.alpha = alpha;
    opts.t_years = t_years;
    opts.k = k;
    opts.step_days = step_days;
    opts.n_bins = n_bins;
    const ReturnSeries r = returns_from_values(returns);
    return correlate_ratio_volatility(losses(r), r, opts);
}

py::dict cell_to_dict(const McCell& c) {
    py::dict d;
    d["alpha"] = c.alpha;
    d["p"] = c.p;
    d["k"] = c.k;
    d["pearson_mean"] = c.pearson.mean;
    d["pearson_sd"] = c.pearson.sd;
    d["spearman_mean"] = c.spearman.mean;
    d["spearman_sd"] = c.spearman.sd;
    d["usable_replications"] = c.pearson_reps.size();
    d["bracketed"] = c.bracketed;
    d["negative_fraction"] = c.negative_fraction;
    return d;
}

McConfig make_config(std::size_t path_length, std::size_t replications,
                     const std::vector<double>& alphas, const std::vector<double>& p_values,
                     const std::vector<int>& k_values, int window_days, int step_days,
                     std::uint64_t seed, unsigned threads) {
    McConfig cfg;
    cfg.path_length = path_length;
    cfg.replications = replications;
    cfg.alphas = alphas;
    cfg.p_values = p_values;
    cfg.k_values = k_values;
    cfg.window_days = window_days;
    cfg.step_days = step_days;
    cfg.master_seed = seed;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_procyclicality, m) {
    m.doc() = "Rolling weighted quantile processes, look-forward risk ratios, realized "
              "volatility conditioning and GARCH(1,1) Monte Carlo experiments";
    m.attr("__version__") = kVersion;

    m.def("empirical_quantile",
          [](const std::vector<double>& sample, double alpha) {
              return empirical_quantile(sample, alpha);
          },
          py::arg("sample"), py::arg("alpha"),
          "ceil(n*alpha)-th order statistic of the sample");
    m.def("weighted_quantile",
          [](const std::vector<double>& sample, double alpha, double p) {
              return weighted_quantile(sample, alpha, p);
          },
          py::arg("sample"), py::arg("alpha"), py::arg("p"),
          "Quantile under the |L|^p weighting; p = 0 is the plain empirical quantile");
    m.def("sample_volatility",
          [](const std::vector<double>& window, int k) { return sample_volatility(window, k); },
          py::arg("window"), py::arg("k"),
          "Deviation statistic; k = 1 MAD variant, k = 2 standard deviation");
    m.def("annualize", &annualize, py::arg("raw"), py::arg("n"));
    m.def("log_returns",
          [](const std::vector<double>& closes) {
              std::vector<Date> dates(closes.size());
              for (std::size_t i = 0; i < closes.size(); ++i) {
                  dates[i] = Date{2000 + static_cast<int>(i / 365), 1, 1};
              }
              std::vector<double> out;
              out.reserve(closes.size() > 0 ? closes.size() - 1 : 0);
              for (std::size_t i = 1; i < closes.size(); ++i) {
                  out.push_back(std::log(closes[i] / closes[i - 1]));
              }
              return out;
          },
          py::arg("closes"), "Log returns of a close series");

    m.def("pearson",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return pearson(x, y);
          });
    m.def("spearman",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return spearman(x, y);
          });
    m.def("rmse",
          [](const std::vector<double>& ratios) { return rmse_values(ratios); },
          py::arg("ratios"), "Root mean square distance of the ratios from 1");
    m.def("fisher_ci",
          [](double r, std::size_t n, double level) { return fisher_ci(r, n, level); },
          py::arg("r"), py::arg("n"), py::arg("level") = 0.95);
    m.def("acf",
          [](const std::vector<double>& series, std::size_t max_lag) {
              return acf(series, max_lag);
          },
          py::arg("series"), py::arg("max_lag"));

    py::class_<RegressionResult>(m, "RegressionResult")
        .def_readonly("intercept", &RegressionResult::intercept)
        .def_readonly("slope", &RegressionResult::slope)
        .def_readonly("slope_se", &RegressionResult::slope_se)
        .def_readonly("p_value", &RegressionResult::p_value)
        .def_readonly("residuals", &RegressionResult::residuals);
    m.def("regress_logratio_on_volatility",
          [](const std::vector<double>& log_ratio, const std::vector<double>& volatility) {
              return regress_logratio_on_volatility(log_ratio, volatility);
          });

    py::class_<BinReport>(m, "BinReport")
        .def_readonly("n_bins", &BinReport::n_bins)
        .def_readonly("edges", &BinReport::edges)
        .def_readonly("counts", &BinReport::counts)
        .def_readonly("mean_ratio", &BinReport::mean_ratio);
    m.def("bin_ratios_by_volatility",
          [](const std::vector<double>& ratios, const std::vector<double>& volatility,
             int n_bins) { return bin_ratios_by_volatility(ratios, volatility, n_bins); });

    py::class_<AnalysisReport>(m, "AnalysisReport")
        .def_readonly("anchors", &AnalysisReport::anchors)
        .def_readonly("ratio", &AnalysisReport::ratio)
        .def_readonly("log_ratio", &AnalysisReport::log_ratio)
        .def_readonly("volatility", &AnalysisReport::volatility)
        .def_readonly("pearson", &AnalysisReport::pearson)
        .def_readonly("spearman", &AnalysisReport::spearman)
        .def_readonly("rmse", &AnalysisReport::rmse)
        .def_readonly("regression", &AnalysisReport::regression)
        .def_readonly("bins", &AnalysisReport::bins)
        .def_readonly("excluded_log_points", &AnalysisReport::excluded_log_points);
    m.def("analyze_returns", &analyze_values, py::arg("returns"), py::arg("p") = 0.0,
          py::arg("alpha") = 0.95, py::arg("t_years") = 1.0, py::arg("k") = 1,
          py::arg("step_days") = 21, py::arg("n_bins") = 5,
          "Look-forward ratio vs realized volatility study on a return series");

    py::class_<GarchParams>(m, "GarchParams")
        .def(py::init([](double omega, double alpha, double beta,
                         std::optional<double> nu) {
                 GarchParams p;
                 p.omega = omega;
                 p.alpha = alpha;
                 p.beta = beta;
                 p.student_nu = nu;
                 p.validate();
                 return p;
             }),
             py::arg("omega"), py::arg("alpha"), py::arg("beta"),
             py::arg("nu") = std::nullopt)
        .def_readonly("omega", &GarchParams::omega)
        .def_readonly("alpha", &GarchParams::alpha)
        .def_readonly("beta", &GarchParams::beta)
        .def_property_readonly("nu",
                               [](const GarchParams& p) { return p.student_nu; })
        .def("stationary", &GarchParams::stationary)
        .def("long_run_variance", &GarchParams::long_run_variance);

    m.def("simulate_garch",
          [](const GarchParams& params, std::size_t n, std::uint64_t seed,
             std::size_t burn_in) { return simulate(params, n, seed, burn_in); },
          py::arg("params"), py::arg("n"), py::arg("seed"), py::arg("burn_in") = 252);
    m.def("fit_garch_gaussian",
          [](const std::vector<double>& returns) { return fit_gaussian(returns); },
          py::arg("returns"));
    m.def("fit_student_nu_on_losses",
          [](const std::vector<double>& returns, const GarchParams& params) {
              const auto fit = fit_student_nu_on_losses(returns, params);
              return py::make_tuple(fit.nu, fit.at_upper_bound);
          },
          py::arg("returns"), py::arg("params"),
          "Returns (nu, at_upper_bound) holding the variance parameters fixed");
    m.def("tau_cor", [](const GarchParams& p) { return tau_cor(p); }, py::arg("params"));
    m.def("normalized_log_likelihood",
          [](const std::vector<double>& returns, const GarchParams& params) {
              return normalized_log_likelihood(returns, params);
          });
    m.def("garch_residuals",
          [](const std::vector<double>& returns, const GarchParams& params) {
              return residuals(returns, params);
          });
    m.def("standardized_student_draws",
          [](double nu, std::uint64_t seed, std::size_t n) {
              StandardizedStudentSampler sampler(nu, seed);
              std::vector<double> out(n);
              for (double& v : out) v = sampler.next();
              return out;
          },
          py::arg("nu"), py::arg("seed"), py::arg("n"));

    m.def("run_iid_experiment",
          [](const std::string& law, double nu, std::size_t path_length,
             std::size_t replications, const std::vector<double>& alphas,
             const std::vector<double>& p_values, const std::vector<int>& k_values,
             int window_days, int step_days, std::uint64_t seed, unsigned threads) {
              IidSpec spec;
              if (law == "normal") {
                  spec.law = IidSpec::Law::normal;
              } else if (law == "student") {
                  spec.law = IidSpec::Law::student;
                  spec.nu = nu;
              } else {
                  throw std::invalid_argument("law must be 'normal' or 'student'");
              }
              const McResult res =
                  run_iid_experiment(spec, make_config(path_length, replications, alphas,
                                                       p_values, k_values, window_days,
                                                       step_days, seed, threads));
              py::list cells;
              for (const auto& c : res.cells) cells.append(cell_to_dict(c));
              return cells;
          },
          py::arg("law") = "normal", py::arg("nu") = 5.0, py::arg("path_length") = 8000,
          py::arg("replications") = 100, py::arg("alphas") = std::vector<double>{0.95, 0.99},
          py::arg("p_values") = std::vector<double>{0.0},
          py::arg("k_values") = std::vector<int>{1}, py::arg("window_days") = 252,
          py::arg("step_days") = 21, py::arg("seed") = 1, py::arg("threads") = 0);

    m.def("run_garch_experiment",
          [](const std::vector<GarchParams>& params, std::size_t path_length,
             std::size_t replications, const std::vector<double>& alphas,
             const std::vector<double>& p_values, const std::vector<int>& k_values,
             int window_days, int step_days, std::uint64_t seed, unsigned threads) {
              std::vector<std::string> names;
              const McResult res =
                  run_garch_experiment(params, names,
                                       make_config(path_length, replications, alphas, p_values,
                                                   k_values, window_days, step_days, seed,
                                                   threads));
              py::list cells;
              for (const auto& c : res.cells) cells.append(cell_to_dict(c));
              return cells;
          },
          py::arg("params"), py::arg("path_length") = 8000, py::arg("replications") = 100,
          py::arg("alphas") = std::vector<double>{0.95, 0.99},
          py::arg("p_values") = std::vector<double>{0.0},
          py::arg("k_values") = std::vector<int>{1}, py::arg("window_days") = 252,
          py::arg("step_days") = 21, py::arg("seed") = 1, py::arg("threads") = 0);
}
