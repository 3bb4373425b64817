#include "procyc/garch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nelder_mead.hpp"
#include "parallel.hpp"
#include "procyc/mathutil.hpp"
#include "procyc/random.hpp"
#include "procyc/series.hpp"

namespace procyc {

namespace {

constexpr double kMaxPersistence = 1.0 - 1e-6;

double sample_variance(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double acc = 0.0;
    for (double v : x) acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(x.size());
}

// Constant series leave a rounding-noise variance; treat it as zero.
bool degenerate_variance(double var, std::span<const double> x) {
    double mean_sq = 0.0;
    for (double v : x) mean_sq += v * v;
    mean_sq /= static_cast<double>(x.size());
    return !(var > 1e-20) || var < 1e-14 * mean_sq;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double u) { return std::log(u / (1.0 - u)); }

struct Unpacked {
    double omega, alpha, beta;
};

// (log omega, logit of persistence share, logit of alpha share): keeps
// omega > 0, alpha, beta > 0 and alpha + beta < 1 - 1e-6 by construction.
Unpacked unpack(const std::vector<double>& th) {
    const double omega = std::exp(th[0]);
    const double s = kMaxPersistence * sigmoid(th[1]);
    const double u = sigmoid(th[2]);
    return {omega, s * u, s * (1.0 - u)};
}

std::vector<double> pack(double omega, double alpha, double beta) {
    const double s = std::clamp((alpha + beta) / kMaxPersistence, 1e-8, 1.0 - 1e-8);
    const double u = std::clamp(alpha / (alpha + beta), 1e-8, 1.0 - 1e-8);
    return {std::log(omega), logit(s), logit(u)};
}

// Average Gaussian negative log-likelihood over the post-burn-in filter.
double gaussian_avg_nll(std::span<const double> x, double omega, double alpha, double beta,
                        int burn_in) {
    const std::size_t n = x.size();
    const auto burn = static_cast<std::size_t>(burn_in);
    double s2 = sample_variance(x.subspan(0, burn));
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t t = burn; t + 1 < n; ++t) {
        s2 = omega + alpha * x[t] * x[t] + beta * s2;
        acc += std::log(s2) + x[t + 1] * x[t + 1] / s2;
        ++count;
    }
    constexpr double ln_2pi = 1.8378770664093453;
    return 0.5 * (ln_2pi + acc / static_cast<double>(count));
}

}  // namespace

double GarchParams::long_run_variance() const {
    if (!stationary()) {
        throw std::domain_error("long-run variance requires alpha + beta < 1");
    }
    return omega / (1.0 - alpha - beta);
}

void GarchParams::validate() const {
    // omega strictly positive keeps the conditional variance bounded away
    // from zero; alpha = beta = 0 is the admissible iid degenerate case.
    if (!(omega > 0.0) || alpha < 0.0 || beta < 0.0) {
        throw std::invalid_argument("GARCH parameters must satisfy omega > 0, alpha, beta >= 0");
    }
    if (student_nu && !(*student_nu > 2.0)) {
        throw std::invalid_argument("Student innovations require nu > 2");
    }
    if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be positive");
}

GarchParams GarchParams::with_student(double nu) const {
    GarchParams out = *this;
    out.student_nu = nu;
    out.validate();
    return out;
}

std::vector<double> simulate(const GarchParams& params, std::size_t n, std::uint64_t seed,
                             std::size_t burn_in, bool allow_nonstationary) {
    params.validate();
    if (!params.stationary() && !allow_nonstationary) {
        throw std::invalid_argument("simulate: non-stationary parameters (alpha + beta >= 1)");
    }
    const double init_var = params.stationary()
                                ? params.long_run_variance()
                                : params.omega / (1.0 - std::min(params.alpha + params.beta, 0.999));
    Rng rng(seed);
    std::vector<double> out(n);
    double s2 = init_var;
    const std::size_t total = n + burn_in;
    for (std::size_t t = 0; t < total; ++t) {
        const double eps = params.student_nu ? rng.standardized_student(*params.student_nu)
                                             : rng.normal();
        const double x = eps * std::sqrt(s2);
        s2 = params.omega + params.alpha * x * x + params.beta * s2;
        if (t >= burn_in) out[t - burn_in] = x;
    }
    return out;
}

GarchParams fit_gaussian(std::span<const double> returns, const GarchFitOptions& options) {
    const std::size_t n = returns.size();
    if (n < 2 * static_cast<std::size_t>(kDaysPerYear)) {
        throw std::invalid_argument("fit_gaussian: need at least two years of data");
    }
    const double var = sample_variance(returns);
    if (degenerate_variance(var, returns)) {
        throw std::invalid_argument("fit_gaussian: degenerate (constant) return series");
    }

    const auto objective = [&](const std::vector<double>& th) {
        const Unpacked q = unpack(th);
        if (!std::isfinite(q.omega) || !(q.omega > 0.0)) return 1e300;
        return gaussian_avg_nll(returns, q.omega, q.alpha, q.beta, options.burn_in);
    };

    // Deterministic multi-start grid; omega by variance targeting.
    static constexpr double alpha_grid[] = {0.02, 0.05, 0.10, 0.15, 0.20};
    static constexpr double beta_grid[] = {0.70, 0.80, 0.90, 0.97};
    bool have_best = false;
    detail::NelderMeadResult best;
    for (double a0 : alpha_grid) {
        for (double b0 : beta_grid) {
            if (a0 + b0 >= 0.995) continue;
            const double omega0 = var * (1.0 - a0 - b0);
            auto run = detail::nelder_mead(objective, pack(omega0, a0, b0), 0.25,
                                           options.objective_tol, options.max_evaluations);
            if (!have_best || run.value < best.value) {
                best = std::move(run);
                have_best = true;
            }
        }
    }
    if (!have_best || !std::isfinite(best.value)) {
        throw std::runtime_error("fit_gaussian: optimizer failed on all starts");
    }
    const Unpacked q = unpack(best.x);
    GarchParams params;
    params.omega = q.omega;
    params.alpha = q.alpha;
    params.beta = q.beta;
    params.validate();
    return params;
}

StudentNuFit fit_student_nu_on_losses(std::span<const double> returns,
                                      const GarchParams& gaussian_params, int burn_in) {
    const auto res = residuals(returns, gaussian_params, burn_in);
    std::vector<double> loss_res;
    loss_res.reserve(res.size() / 2);
    for (double e : res) {
        if (e < 0.0) loss_res.push_back(e);  // X_{t+1} < 0 <=> eps_t < 0
    }
    if (loss_res.size() < 100) {
        throw std::invalid_argument("fit_student_nu_on_losses: fewer than 100 loss residuals");
    }
    const auto mean_ll = [&](double nu) {
        double acc = 0.0;
        for (double e : loss_res) acc += standardized_student_logpdf(e, nu);
        return acc / static_cast<double>(loss_res.size());
    };

    // Golden-section maximization on [2.5, 50].
    constexpr double gr = 0.6180339887498949;
    double a = kNuLower, b = kNuUpper;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = mean_ll(c), fd = mean_ll(d);
    while (b - a > 1e-6) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = mean_ll(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = mean_ll(d);
        }
    }
    double nu = 0.5 * (a + b);
    // A boundary maximum beats the interior point for near-Gaussian tails.
    if (mean_ll(kNuUpper) >= mean_ll(nu)) nu = kNuUpper;
    StudentNuFit fit;
    fit.nu = nu;
    fit.at_upper_bound = nu >= kNuUpper - 0.5;
    return fit;
}

double tau_cor(const GarchParams& params) {
    const double s = params.alpha + params.beta;
    if (!(s > 0.0) || s >= 1.0) {
        throw std::domain_error("tau_cor requires 0 < alpha + beta < 1");
    }
    return params.delta_t / std::abs(std::log(s));
}

double normalized_log_likelihood(std::span<const double> returns, const GarchParams& params,
                                 int burn_in) {
    params.validate();
    const std::size_t n = returns.size();
    const auto burn = static_cast<std::size_t>(burn_in);
    if (n < burn + 2) throw std::invalid_argument("normalized_log_likelihood: series too short");
    const double seed_var = sample_variance(returns.subspan(0, burn));
    if (degenerate_variance(sample_variance(returns), returns)) {
        throw std::invalid_argument("normalized_log_likelihood: degenerate series");
    }
    double s2 = seed_var;
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t t = burn; t + 1 < n; ++t) {
        s2 = params.omega + params.alpha * returns[t] * returns[t] + params.beta * s2;
        const double sigma = std::sqrt(s2);
        acc += params.student_nu
                   ? standardized_student_logpdf(returns[t + 1] / sigma, *params.student_nu) -
                         std::log(sigma)
                   : normal_logpdf(returns[t + 1], sigma);
        ++count;
    }
    return acc / static_cast<double>(count);
}

std::vector<double> residuals(std::span<const double> returns, const GarchParams& params,
                              int burn_in) {
    params.validate();
    const std::size_t n = returns.size();
    const auto burn = static_cast<std::size_t>(burn_in);
    if (n < burn + 2) throw std::invalid_argument("residuals: series too short");
    double s2 = sample_variance(returns.subspan(0, burn));
    std::vector<double> out;
    out.reserve(n - burn - 1);
    for (std::size_t t = burn; t + 1 < n; ++t) {
        s2 = params.omega + params.alpha * returns[t] * returns[t] + params.beta * s2;
        out.push_back(returns[t + 1] / std::sqrt(s2));
    }
    return out;
}

double annualized_std_volatility_pct(std::span<const double> returns) {
    if (returns.size() < 2) throw std::invalid_argument("volatility: series too short");
    double mean = 0.0;
    for (double v : returns) mean += v;
    mean /= static_cast<double>(returns.size());
    double acc = 0.0;
    for (double v : returns) acc += (v - mean) * (v - mean);
    const double sd = std::sqrt(acc / static_cast<double>(returns.size() - 1));
    return 100.0 * std::sqrt(252.0) * sd;
}

GarchFitReport fit_report(std::span<const double> returns, const GarchReportOptions& options) {
    GarchFitReport report;
    report.params = fit_gaussian(returns, options.fit);
    const auto nu_fit = fit_student_nu_on_losses(returns, report.params, options.fit.burn_in);
    report.nu = nu_fit.nu;
    report.nu_at_upper_bound = nu_fit.at_upper_bound;
    report.tau_cor_days = tau_cor(report.params);
    report.normalized_ll_gaussian =
        normalized_log_likelihood(returns, report.params, options.fit.burn_in);
    report.normalized_ll_student = normalized_log_likelihood(
        returns, report.params.with_student(report.nu), options.fit.burn_in);
    report.historical_volatility_pct = annualized_std_volatility_pct(returns);
    report.replications = options.replications;

    std::vector<double> sim_vol(options.replications);
    detail::parallel_for(options.replications, options.threads, [&](std::size_t r) {
        const auto path = simulate(report.params, returns.size(),
                                   Rng::derive(options.seed, r));
        sim_vol[r] = annualized_std_volatility_pct(path);
    });
    double acc = 0.0;
    for (double v : sim_vol) acc += v;
    report.mean_sim_volatility_pct =
        options.replications > 0 ? acc / static_cast<double>(options.replications) : 0.0;
    return report;
}

}  // namespace procyc
