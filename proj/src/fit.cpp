#include "mcmpb/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace mcmpb {

fit_error::fit_error(const std::string& what_arg, fit_report best)
    : std::runtime_error(what_arg), best_(std::move(best)) {}

namespace {

// Objective barrier: a smooth, steeply increasing penalty outside the
// parameter cap keeps the simplex pointed back toward the feasible box.
double cap_penalty(const std::vector<double>& x) {
    double excess = 0.0;
    for (double v : x) excess += std::max(0.0, std::fabs(v) - parameter_cap);
    if (excess == 0.0) return 0.0;
    return 1e10 * (1.0 + excess * excess);
}

double guarded(double negative_loglik) {
    return std::isfinite(negative_loglik) ? negative_loglik : 1e12;
}

// log P(X >= 1) relative to the table's internal scaling.
double log_tail_scaled(const prob_table& t) {
    return log_sum_exp(t.log_weights.data() + 1, t.log_weights.size() - 1);
}

double loglik_truncated(const frequency_data& data, const prob_table& t) {
    const double log_tail = log_tail_scaled(t);
    compensated_sum acc;
    for (const auto& r : data.rows)
        acc.add(static_cast<double>(r.frequency) *
                (t.log_weights[static_cast<std::size_t>(r.value)] - log_tail));
    return acc.value();
}

double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

double log_likelihood(const frequency_data& data, const params& p) {
    data.validate();
    p.validate();
    if (data.max_value() > p.n)
        throw std::invalid_argument("log_likelihood: observed value exceeds n");
    if (data.truncated_at_zero) {
        return loglik_truncated(data, build_table(p));
    }
    const sufficient_stats s = compute_sufficient_stats(data, p.n);
    const prob_table t = build_table(p);
    return static_cast<double>(data.total()) *
           (p.psi * s.s1 + p.alpha * s.s2 + p.beta * s.s3 - t.log_norm_absolute);
}

namespace {

void fill_gof_and_expected(fit_report& report, const frequency_data& data,
                           const prob_table& t, int k_params,
                           const fit_options& options) {
    const double total = static_cast<double>(data.total());
    const double tail = data.truncated_at_zero
                            ? std::exp(log_tail_scaled(t) - t.log_norm)
                            : 1.0;
    report.values.clear();
    report.observed.clear();
    report.expected.clear();
    std::vector<double> obs;
    // Walk the full support so the expected column carries all the fitted
    // mass; cells without an observed row enter with frequency zero.
    const int lo = data.truncated_at_zero ? 1 : 0;
    const int hi = static_cast<int>(t.pmf.size()) - 1;
    std::size_t row = 0;
    for (int x = lo; x <= hi; ++x) {
        long long freq = 0;
        if (row < data.rows.size() && data.rows[row].value == x)
            freq = data.rows[row++].frequency;
        report.values.push_back(x);
        report.observed.push_back(freq);
        const double pk = t.pmf[static_cast<std::size_t>(x)] / tail;
        report.expected.push_back(total * pk);
        obs.push_back(static_cast<double>(freq));
    }
    if (options.with_gof)
        report.gof = chisq_test(obs, report.expected, k_params,
                                {options.merge_threshold, true});
}

void fill_confidence(fit_report& report, const params& p, bool truncated,
                     double n_obs) {
    // Covariance order is (X, log X!, log (n-X)!) ~ (psi, alpha, beta);
    // estimates are reported as (alpha, beta, psi).
    try {
        const matrix3 info = fisher_information(p, truncated);
        const std::array<double, 3> se_nat = standard_errors(info, n_obs);
        report.se = {se_nat[1], se_nat[2], se_nat[0]};
        report.ci95.clear();
        for (std::size_t i = 0; i < 3; ++i)
            report.ci95.push_back({report.estimates[i] - z_95 * report.se[i],
                                   report.estimates[i] + z_95 * report.se[i]});
        report.ci_available = true;
    } catch (const std::runtime_error& e) {
        report.se.clear();
        report.ci95.clear();
        report.ci_available = false;
        if (!report.notes.empty()) report.notes += "; ";
        report.notes += std::string("confidence intervals unavailable: ") + e.what();
    }
}

}  // namespace

fit_report fit_fixed_n(const frequency_data& data, int n, const fit_options& options) {
    data.validate();
    if (n < data.max_value())
        throw std::invalid_argument("fit_fixed_n: n is smaller than the largest observed value");

    const double total = static_cast<double>(data.total());
    const bool truncated = data.truncated_at_zero;
    const sufficient_stats stats = compute_sufficient_stats(data, n);

    const auto objective = [&](const std::vector<double>& x) -> double {
        const double barrier = cap_penalty(x);
        if (barrier > 0.0) return barrier;
        const params p{n, x[0], x[1], x[2]};
        const prob_table t = build_table(p);
        double ll;
        if (truncated) {
            ll = loglik_truncated(data, t);
        } else {
            ll = total * (p.psi * stats.s1 + p.alpha * stats.s2 + p.beta * stats.s3 -
                          t.log_norm_absolute);
        }
        return guarded(-ll);
    };

    const double frac = std::clamp(stats.s1 / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
    const std::vector<std::vector<double>> starts = {
        {0.0, 0.0, 0.0},
        {1.0, 1.0, 0.0},
        {1.0, 0.0, 1.0},
        {0.0, 1.0, 1.0},
        {1.0, 1.0, logit(frac)},
    };
    nelder_mead_options nm;
    nm.max_iterations = 2000;
    nm.x_tolerance = 1e-8;
    nm.f_tolerance = 1e-10;
    nm.initial_step = 0.5;
    const nelder_mead_result best = minimize_multistart(objective, starts, nm);

    const params fitted{n, best.x[0], best.x[1], best.x[2]};
    fit_report report;
    report.model = "mcmpb";
    report.n = n;
    report.param_names = {"alpha", "beta", "psi"};
    report.estimates = {fitted.alpha, fitted.beta, fitted.psi};
    report.truncated = truncated;
    report.converged = best.converged;
    report.loglik = -best.f;
    report.aic = aic(report.loglik, 3);
    report.boundary_solution =
        std::fabs(fitted.alpha) > parameter_cap - 1e-6 ||
        std::fabs(fitted.beta) > parameter_cap - 1e-6 ||
        std::fabs(fitted.psi) > parameter_cap - 1e-6;

    const prob_table t = build_table(fitted);
    if (!truncated) {
        // Likelihood equations: the fitted means of the sufficient
        // statistics must match the sample statistics.
        const stat_moments sm = sufficient_stat_moments(t, false);
        report.moment_equations_ok = std::fabs(sm.mean[0] - stats.s1) <= 1e-4 &&
                                     std::fabs(sm.mean[1] + stats.s2) <= 1e-4 &&
                                     std::fabs(sm.mean[2] + stats.s3) <= 1e-4;
        if (!report.moment_equations_ok)
            report.notes = "likelihood equations not satisfied to 1e-4 at the optimum";
    }
    fill_gof_and_expected(report, data, t, 3, options);
    fill_confidence(report, fitted, truncated, total);

    if (!best.converged)
        throw fit_error("fit_fixed_n: optimizer failed to converge from all restarts",
                        report);
    return report;
}

fit_report fit_profile_n(const frequency_data& data, const fit_options& options) {
    return fit_profile_n(data, data.max_value(), data.max_value() + 30, options);
}

fit_report fit_profile_n(const frequency_data& data, int n_low, int n_high,
                         const fit_options& options) {
    data.validate();
    if (n_low < data.max_value())
        throw std::invalid_argument("fit_profile_n: range must start at or above the max count");
    if (n_high < n_low) throw std::invalid_argument("fit_profile_n: empty n range");

    std::optional<fit_report> best;
    std::string failures;
    for (int n = n_low; n <= n_high; ++n) {
        try {
            fit_report r = fit_fixed_n(data, n, options);
            if (!best || r.loglik > best->loglik) best = std::move(r);
        } catch (const fit_error&) {
            failures += (failures.empty() ? "" : ", ") + std::to_string(n);
        }
    }
    if (!best)
        throw fit_error("fit_profile_n: no n in the range produced a converged fit",
                        fit_report{});
    best->profile_n = true;
    if (!failures.empty()) {
        if (!best->notes.empty()) best->notes += "; ";
        best->notes += "profile skipped non-converged n in {" + failures + "}";
    }
    return *best;
}

matrix3 fisher_information(const params& p, bool truncated) {
    const stat_moments sm = sufficient_stat_moments(build_table(p), truncated);
    matrix3 out;
    out.m = sm.cov;
    return out;
}

std::array<double, 3> standard_errors(const matrix3& fisher, double n_obs) {
    if (!(n_obs > 0.0)) throw std::invalid_argument("standard_errors: N must be > 0");
    const double cond = fisher.condition();
    if (!std::isfinite(cond) || cond >= 1e12)
        throw std::runtime_error("standard_errors: information matrix is numerically singular");
    const matrix3 inv = fisher.inverse();
    std::array<double, 3> se{};
    for (std::size_t i = 0; i < 3; ++i) {
        const double v = inv.m[i][i] / n_obs;
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::runtime_error("standard_errors: non-positive variance estimate");
        se[i] = std::sqrt(v);
    }
    return se;
}

std::vector<sim_result> simulation_study(const std::vector<sim_config>& configs,
                                         std::uint64_t seed) {
    std::vector<sim_result> results;
    fit_options fast;
    fast.with_gof = false;
    std::uint64_t config_index = 0;
    for (const sim_config& cfg : configs) {
        if (cfg.reps < 1) throw std::invalid_argument("simulation_study: reps must be >= 1");
        cfg.truth.validate();
        sim_result res;
        res.config = cfg;
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (config_index + 1));
        ++config_index;

        const std::array<double, 3> truth = {cfg.truth.alpha, cfg.truth.beta,
                                             cfg.truth.psi};
        std::array<compensated_sum, 3> bias_acc, mse_acc;
        for (int rep = 0; rep < cfg.reps; ++rep) {
            const std::vector<int> draws =
                sample(cfg.truth, static_cast<std::size_t>(cfg.sample_size), rng);
            std::vector<long long> freq(static_cast<std::size_t>(cfg.truth.n) + 1, 0);
            for (int d : draws) ++freq[static_cast<std::size_t>(d)];
            frequency_data data;
            for (int v = 0; v <= cfg.truth.n; ++v)
                if (freq[static_cast<std::size_t>(v)] > 0)
                    data.rows.push_back({v, freq[static_cast<std::size_t>(v)]});

            try {
                const fit_report fit = fit_fixed_n(data, cfg.truth.n, fast);
                if (!fit.ci_available) {
                    ++res.fit_failures;
                    continue;
                }
                for (std::size_t i = 0; i < 3; ++i) {
                    const double err = fit.estimates[i] - truth[i];
                    bias_acc[i].add(err);
                    mse_acc[i].add(err * err);
                    if (truth[i] >= fit.ci95[i][0] && truth[i] <= fit.ci95[i][1])
                        ++res.by_param[i].covered;
                }
                ++res.reps_used;
            } catch (const fit_error&) {
                ++res.fit_failures;
            }
        }
        for (std::size_t i = 0; i < 3; ++i) {
            if (res.reps_used > 0) {
                res.by_param[i].bias = bias_acc[i].value() / res.reps_used;
                res.by_param[i].mse = mse_acc[i].value() / res.reps_used;
            }
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace mcmpb
