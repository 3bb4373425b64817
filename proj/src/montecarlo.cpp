#include "procyc/montecarlo.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"
#include "procyc/quantile.hpp"
#include "procyc/random.hpp"
#include "procyc/series.hpp"
#include "procyc/stats.hpp"

namespace procyc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::size_t order_rank(std::size_t n, double alpha) {
    const double m = static_cast<double>(n) * alpha;
    const double f = std::floor(m);
    std::size_t k = m - f <= 1e-9 ? static_cast<std::size_t>(f)
                                  : static_cast<std::size_t>(f) + 1;
    if (k < 1) k = 1;
    if (k > n) k = n;
    return k;
}

double weighted_quantile_sorted(const std::vector<double>& sorted, double alpha, double p) {
    double total = 0.0;
    for (double v : sorted) total += std::pow(std::abs(v), p);
    if (!(total > 0.0)) return kNan;
    double cum = 0.0;
    std::size_t i = 0;
    const std::size_t n = sorted.size();
    while (i < n) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) {
            cum += std::pow(std::abs(sorted[j]), p);
            ++j;
        }
        if (cum / total >= alpha) return sorted[i];
        i = j;
    }
    return sorted.back();
}

/// Per-path correlations for every (alpha, p, k) cell: the monthly pipeline
/// of look-forward loss-quantile ratios against annualized volatility.
struct PathCorrelations {
    // cell-major: [p][alpha][k], flattened by the caller's ordering
    std::vector<double> pearson;
    std::vector<double> spearman;
};

PathCorrelations analyze_path(const std::vector<double>& returns, const McConfig& cfg) {
    const auto n_past = static_cast<std::size_t>(cfg.window_days);
    const std::size_t n_future = kDaysPerYear;
    const std::size_t n_obs = returns.size();
    const std::size_t n_cells = cfg.p_values.size() * cfg.alphas.size() * cfg.k_values.size();

    std::vector<double> loss(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) loss[i] = -returns[i];

    // Per anchor, per (p, alpha): ratio; per k: annualized volatility.
    const std::size_t n_pa = cfg.p_values.size() * cfg.alphas.size();
    std::vector<std::vector<double>> ratios(n_pa);
    std::vector<std::vector<double>> vols(cfg.k_values.size());

    std::vector<double> past_sorted(n_past), future_sorted(n_future);
    for (std::size_t t = n_past; t + n_future <= n_obs;
         t += static_cast<std::size_t>(cfg.step_days)) {
        past_sorted.assign(loss.begin() + static_cast<long>(t - n_past),
                           loss.begin() + static_cast<long>(t));
        std::sort(past_sorted.begin(), past_sorted.end());
        future_sorted.assign(loss.begin() + static_cast<long>(t),
                             loss.begin() + static_cast<long>(t + n_future));
        std::sort(future_sorted.begin(), future_sorted.end());

        for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
            for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
                const double alpha = cfg.alphas[ai];
                const double p = cfg.p_values[pi];
                const double denom =
                    p == 0.0 ? past_sorted[order_rank(n_past, alpha) - 1]
                             : weighted_quantile_sorted(past_sorted, alpha, p);
                const double numer = future_sorted[order_rank(n_future, alpha) - 1];
                ratios[pi * cfg.alphas.size() + ai].push_back(
                    denom == 0.0 ? kNan : numer / denom);
            }
        }
        // Volatility over the identical past window, on returns.
        double mean = 0.0;
        for (std::size_t i = t - n_past; i < t; ++i) mean += returns[i];
        mean /= static_cast<double>(n_past);
        for (std::size_t ki = 0; ki < cfg.k_values.size(); ++ki) {
            double acc = 0.0;
            if (cfg.k_values[ki] == 1) {
                for (std::size_t i = t - n_past; i < t; ++i) acc += std::abs(returns[i] - mean);
                acc /= static_cast<double>(n_past - 1);
            } else {
                for (std::size_t i = t - n_past; i < t; ++i) {
                    acc += (returns[i] - mean) * (returns[i] - mean);
                }
                acc = std::sqrt(acc / static_cast<double>(n_past - 1));
            }
            vols[ki].push_back(std::sqrt(static_cast<double>(n_past)) * acc);
        }
    }

    PathCorrelations out;
    out.pearson.assign(n_cells, kNan);
    out.spearman.assign(n_cells, kNan);
    std::vector<double> lr, v_lr, r_ok, v_ok;
    std::size_t cell = 0;
    for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
        for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
            const auto& rvec = ratios[pi * cfg.alphas.size() + ai];
            for (std::size_t ki = 0; ki < cfg.k_values.size(); ++ki, ++cell) {
                const auto& vvec = vols[ki];
                lr.clear();
                v_lr.clear();
                r_ok.clear();
                v_ok.clear();
                for (std::size_t i = 0; i < rvec.size(); ++i) {
                    if (std::isnan(rvec[i])) continue;
                    r_ok.push_back(rvec[i]);
                    v_ok.push_back(vvec[i]);
                    if (rvec[i] > 0.0) {
                        lr.push_back(std::log(rvec[i]));
                        v_lr.push_back(vvec[i]);
                    }
                }
                try {
                    if (lr.size() >= 3) out.pearson[cell] = pearson(lr, v_lr);
                    if (r_ok.size() >= 3) out.spearman[cell] = spearman(r_ok, v_ok);
                } catch (const std::invalid_argument&) {
                    // constant series on a degenerate path; leave the cell NaN
                }
            }
        }
    }
    return out;
}

McCellStats stats_of(const std::vector<double>& xs) {
    McCellStats s;
    s.n = xs.size();
    if (xs.empty()) {
        s.mean = kNan;
        s.sd = kNan;
        return s;
    }
    double acc = 0.0;
    for (double v : xs) acc += v;
    s.mean = acc / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        s.sd = kNan;
        return s;
    }
    double ss = 0.0;
    for (double v : xs) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return s;
}

double negative_confidence_level(double neg_fraction) {
    for (double level : {0.99, 0.95, 0.90, 0.85}) {
        if (neg_fraction >= 0.5 * (1.0 + level)) return level;
    }
    return 0.0;
}

McResult run_experiment(const std::string& label, std::span<const GarchParams> garch_sets,
                        std::span<const std::string> names, const IidSpec* iid,
                        const McConfig& cfg) {
    cfg.validate();
    const std::size_t n_indices = iid ? 1 : garch_sets.size();
    const std::size_t n_cells = cfg.p_values.size() * cfg.alphas.size() * cfg.k_values.size();

    McResult result;
    result.generator = label;
    result.config = cfg;
    result.cells.resize(n_cells);
    {
        std::size_t cell = 0;
        for (double p : cfg.p_values) {
            for (double alpha : cfg.alphas) {
                for (int k : cfg.k_values) {
                    McCell& c = result.cells[cell++];
                    c.alpha = alpha;
                    c.p = p;
                    c.k = k;
                    c.bracketed = iid && iid->law == IidSpec::Law::student && k == 2 &&
                                  iid->nu <= 4.0;
                }
            }
        }
    }
    if (!iid) result.index_names.assign(names.begin(), names.end());

    // replication-major storage keyed by (index, rep, cell)
    const std::size_t total_reps = n_indices * cfg.replications;
    std::vector<double> pearson_store(total_reps * n_cells, kNan);
    std::vector<double> spearman_store(total_reps * n_cells, kNan);

    detail::parallel_for(total_reps, cfg.threads, [&](std::size_t job) {
        const std::size_t index = job / cfg.replications;
        const std::uint64_t seed = Rng::derive(cfg.master_seed, job);
        std::vector<double> path;
        if (iid) {
            Rng rng(seed);
            path.resize(cfg.path_length);
            if (iid->law == IidSpec::Law::normal) {
                for (double& x : path) x = iid->mu + iid->sigma * rng.normal();
            } else {
                for (double& x : path) {
                    x = iid->mu + iid->sigma * rng.standardized_student(iid->nu);
                }
            }
        } else {
            path = simulate(garch_sets[index], cfg.path_length, seed);
        }
        const auto corr = analyze_path(path, cfg);
        std::copy(corr.pearson.begin(), corr.pearson.end(),
                  pearson_store.begin() + static_cast<long>(job * n_cells));
        std::copy(corr.spearman.begin(), corr.spearman.end(),
                  spearman_store.begin() + static_cast<long>(job * n_cells));
    });

    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        McCell& c = result.cells[cell];
        std::size_t negatives = 0;
        for (std::size_t index = 0; index < n_indices; ++index) {
            std::vector<double> pe, sp;
            pe.reserve(cfg.replications);
            sp.reserve(cfg.replications);
            for (std::size_t r = 0; r < cfg.replications; ++r) {
                const std::size_t job = index * cfg.replications + r;
                const double pv = pearson_store[job * n_cells + cell];
                const double sv = spearman_store[job * n_cells + cell];
                if (std::isnan(pv) || std::isnan(sv)) {
                    ++c.unusable_replications;
                    continue;
                }
                pe.push_back(pv);
                sp.push_back(sv);
                if (pv < 0.0) ++negatives;
            }
            c.pearson_index_means.push_back(stats_of(pe).mean);
            c.spearman_index_means.push_back(stats_of(sp).mean);
            c.pearson_reps.insert(c.pearson_reps.end(), pe.begin(), pe.end());
            c.spearman_reps.insert(c.spearman_reps.end(), sp.begin(), sp.end());
        }
        if (n_indices > 1) {
            // average of per-index means; spread across the index means
            c.pearson = stats_of(c.pearson_index_means);
            c.spearman = stats_of(c.spearman_index_means);
        } else {
            c.pearson = stats_of(c.pearson_reps);
            c.spearman = stats_of(c.spearman_reps);
        }
        c.negative_fraction = c.pearson_reps.empty()
                                  ? 0.0
                                  : static_cast<double>(negatives) /
                                        static_cast<double>(c.pearson_reps.size());
        c.negative_confidence = negative_confidence_level(c.negative_fraction);
    }
    return result;
}

}  // namespace

void IidSpec::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("iid generator: sigma must be positive");
    if (law == Law::student && !(nu > 2.0)) {
        throw std::invalid_argument("iid generator: Student nu must exceed 2");
    }
}

std::string IidSpec::label() const {
    if (law == Law::normal) return "normal";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "student(%g)", nu);
    return buf;
}

void McConfig::validate() const {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (window_days < 2) throw std::invalid_argument("window must be >= 2 days");
    if (step_days < 1) throw std::invalid_argument("step must be >= 1 day");
    if (alphas.empty() || p_values.empty() || k_values.empty()) {
        throw std::invalid_argument("alpha/p/k grids must be non-empty");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    }
    for (double p : p_values) {
        if (!(p >= 0.0)) throw std::invalid_argument("p must be non-negative");
    }
    for (int k : k_values) {
        if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
    }
    const auto min_len =
        static_cast<std::size_t>(2 * window_days + step_days);
    if (path_length < min_len) {
        throw std::invalid_argument("path_length must be >= 2*window + step");
    }
}

McResult run_iid_experiment(const IidSpec& spec, const McConfig& config) {
    spec.validate();
    return run_experiment(spec.label(), {}, {}, &spec, config);
}

McResult run_garch_experiment(std::span<const GarchParams> params,
                              std::span<const std::string> names, const McConfig& config) {
    if (params.empty()) throw std::invalid_argument("garch experiment: no parameter sets");
    if (!names.empty() && names.size() != params.size()) {
        throw std::invalid_argument("garch experiment: names/params size mismatch");
    }
    for (const GarchParams& p : params) {
        p.validate();
        if (!p.stationary()) {
            throw std::invalid_argument("garch experiment: non-stationary parameter set");
        }
    }
    std::vector<std::string> resolved(names.begin(), names.end());
    if (resolved.empty()) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            resolved.push_back("set" + std::to_string(i));
        }
    }
    bool any_student = false;
    for (const auto& p : params) any_student = any_student || p.student_nu.has_value();
    return run_experiment(any_student ? "garch-student" : "garch-gaussian", params, resolved,
                          nullptr, config);
}

}  // namespace procyc
