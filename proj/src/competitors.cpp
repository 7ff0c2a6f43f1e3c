#include "mcmpb/competitors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "mcmpb/cmp.hpp"
#include "mcmpb/numeric.hpp"

namespace mcmpb {

namespace {

constexpr double transform_boundary = 23.0;  // |log parameter| beyond this flags drift

double guarded(double v) { return std::isfinite(v) ? v : 1e12; }

double logit(double p) { return std::log(p / (1.0 - p)); }

nelder_mead_options default_nm() {
    nelder_mead_options nm;
    nm.max_iterations = 2000;
    nm.x_tolerance = 1e-8;
    nm.f_tolerance = 1e-10;
    nm.initial_step = 0.5;
    return nm;
}

// Shared report assembly for two-parameter competitors.  log_pmf_fn must
// return the untruncated log pmf at a value; support_high < 0 means
// unbounded support (expected cells then cover only the observed range and
// total-matching is not required).
fit_report finish_two_param_report(
    const frequency_data& data, const std::string& model,
    const std::vector<std::string>& names, const std::vector<double>& estimates,
    int support_n, double loglik, bool converged, bool boundary,
    const std::function<double(int)>& log_pmf_fn,
    const std::function<double(const std::vector<double>&)>& neg_loglik,
    const fit_options& options) {
    fit_report report;
    report.model = model;
    report.n = support_n;
    report.param_names = names;
    report.estimates = estimates;
    report.truncated = data.truncated_at_zero;
    report.converged = converged;
    report.boundary_solution = boundary;
    report.loglik = loglik;
    report.aic = aic(loglik, 2);

    // Normalizer of the (possibly truncated) law over the reporting range.
    double log_tail = 0.0;
    if (data.truncated_at_zero) {
        const double lp0 = log_pmf_fn(0);
        log_tail = std::log1p(-std::exp(lp0));
    }

    report.values.clear();
    report.observed.clear();
    report.expected.clear();
    const double total = static_cast<double>(data.total());
    for (const auto& r : data.rows) {
        report.values.push_back(r.value);
        report.observed.push_back(r.frequency);
        report.expected.push_back(total * std::exp(log_pmf_fn(r.value) - log_tail));
    }

    if (options.with_gof) {
        // Chi-square cells cover the contiguous value range so that gaps in
        // the observed rows enter as zero-count cells.
        const int low = data.truncated_at_zero ? 1 : 0;
        const int high = support_n >= 0 ? support_n : data.max_value();
        std::vector<double> obs_cells(static_cast<std::size_t>(high - low) + 1, 0.0);
        std::vector<double> exp_cells(static_cast<std::size_t>(high - low) + 1, 0.0);
        for (const auto& r : data.rows)
            obs_cells[static_cast<std::size_t>(r.value - low)] =
                static_cast<double>(r.frequency);
        for (int v = low; v <= high; ++v)
            exp_cells[static_cast<std::size_t>(v - low)] =
                total * std::exp(log_pmf_fn(v) - log_tail);
        chisq_options co;
        co.merge_threshold = options.merge_threshold;
        co.require_matched_totals = support_n >= 0;
        report.gof = chisq_test(obs_cells, exp_cells, 2, co);
    }

    // Standard errors from the observed information (negative Hessian of the
    // log likelihood in the transformed coordinates has the same diagonal
    // meaning only in those coordinates, so differentiate in the natural
    // ones via the chain through neg_loglik's own parameterization).
    report.ci_available = false;
    try {
        const double h0 = 1e-4;
        std::array<std::array<double, 2>, 2> hess{};
        const std::vector<double>& x = report.estimates;
        std::vector<double> probe = x;
        const auto f = [&](const std::vector<double>& q) { return neg_loglik(q); };
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double hi = h0 * std::max(1.0, std::fabs(x[static_cast<std::size_t>(i)]));
                const double hj = h0 * std::max(1.0, std::fabs(x[static_cast<std::size_t>(j)]));
                if (i == j) {
                    probe = x;
                    const double fc = f(probe);
                    probe[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + hi;
                    const double fp = f(probe);
                    probe[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - hi;
                    const double fm = f(probe);
                    hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        (fp - 2.0 * fc + fm) / (hi * hi);
                } else {
                    probe = x;
                    probe[static_cast<std::size_t>(i)] += hi;
                    probe[static_cast<std::size_t>(j)] += hj;
                    const double fpp = f(probe);
                    probe[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] - hj;
                    const double fpm = f(probe);
                    probe[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - hi;
                    const double fmm = f(probe);
                    probe[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] + hj;
                    const double fmp = f(probe);
                    hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
                }
            }
        }
        const double det = hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0];
        if (det > 0.0 && hess[0][0] > 0.0) {
            const double v0 = hess[1][1] / det;
            const double v1 = hess[0][0] / det;
            if (v0 > 0.0 && v1 > 0.0 && std::isfinite(v0) && std::isfinite(v1)) {
                report.se = {std::sqrt(v0), std::sqrt(v1)};
                report.ci95 = {{x[0] - z_95 * report.se[0], x[0] + z_95 * report.se[0]},
                               {x[1] - z_95 * report.se[1], x[1] + z_95 * report.se[1]}};
                report.ci_available = true;
            }
        }
    } catch (const std::exception&) {
        // leave CIs unavailable
    }
    if (!report.ci_available && report.notes.find("confidence") == std::string::npos) {
        if (!report.notes.empty()) report.notes += "; ";
        report.notes += "confidence intervals unavailable: observed information not positive definite";
    }
    return report;
}

}  // namespace

fit_report fit_nb(const frequency_data& data, const fit_options& options) {
    data.validate();
    const double total = static_cast<double>(data.total());
    const bool truncated = data.truncated_at_zero;

    const auto log_pmf_at = [](double r, double p, int x) {
        return std::lgamma(r + x) - std::lgamma(r) - std::lgamma(static_cast<double>(x) + 1.0) +
               static_cast<double>(x) * std::log(p) + r * std::log1p(-p);
    };
    const auto objective = [&](const std::vector<double>& q) -> double {
        const double r = std::exp(q[0]);
        const double p = 1.0 / (1.0 + std::exp(-q[1]));
        if (!std::isfinite(r) || !(p > 0.0) || !(p < 1.0)) return 1e12;
        compensated_sum ll;
        for (const auto& row : data.rows)
            ll.add(static_cast<double>(row.frequency) * log_pmf_at(r, p, row.value));
        double value = ll.value();
        if (truncated) {
            const double lp0 = r * std::log1p(-p);
            value -= total * std::log1p(-std::exp(lp0));
        }
        return guarded(-value);
    };

    const double m = data.mean();
    const double v = data.variance();
    std::vector<std::vector<double>> starts;
    if (v > m && m > 0.0) {
        const double r0 = std::clamp(m * m / (v - m), 1e-3, 1e6);
        starts.push_back({std::log(r0), logit(std::clamp(m / (r0 + m), 1e-6, 1.0 - 1e-6))});
    }
    for (double r0 : {1.0, 10.0, 100.0})
        starts.push_back({std::log(r0), logit(std::clamp(m / (r0 + m), 1e-6, 1.0 - 1e-6))});

    const nelder_mead_result best = minimize_multistart(objective, starts, default_nm());
    const double r_hat = std::exp(best.x[0]);
    const double p_hat = 1.0 / (1.0 + std::exp(-best.x[1]));
    bool boundary = std::fabs(best.x[0]) > transform_boundary ||
                    std::fabs(best.x[1]) > transform_boundary;

    // The r -> inf ridge flattens out long before the transform boundary, so
    // also compare against the limiting Poisson law directly: when the
    // optimum cannot beat it by half a log-likelihood unit, the size
    // parameter is unidentified and the solution is a boundary one.
    {
        double lam = m > 0.0 ? m : 1e-8;
        if (truncated)
            for (int it = 0; it < 64; ++it) {
                const double em = -std::expm1(-lam);  // 1 - e^{-lam}
                const double g = lam / em - m;
                const double dg = (em - lam * std::exp(-lam)) / (em * em);
                const double step = g / dg;
                lam -= step;
                if (!(lam > 0.0)) lam = 1e-8;
                if (std::fabs(step) < 1e-12) break;
            }
        compensated_sum pois;
        for (const auto& row : data.rows)
            pois.add(static_cast<double>(row.frequency) *
                     (row.value * std::log(lam) - lam -
                      std::lgamma(static_cast<double>(row.value) + 1.0)));
        double ll_pois = pois.value();
        if (truncated) ll_pois -= total * std::log(-std::expm1(-lam));
        if (-best.f - ll_pois < 0.5) boundary = true;
    }

    const auto neg_ll_natural = [&](const std::vector<double>& nat) {
        return objective({std::log(nat[0]), logit(nat[1])});
    };
    fit_report report = finish_two_param_report(
        data, "nb", {"r", "p"}, {r_hat, p_hat}, -1, -best.f, best.converged, boundary,
        [&](int x) { return log_pmf_at(r_hat, p_hat, x); }, neg_ll_natural, options);
    if (boundary) {
        if (!report.notes.empty()) report.notes += "; ";
        report.notes += "boundary drift: likelihood ridge runs toward the Poisson limit (r -> inf)";
    }
    if (!best.converged) throw fit_error("fit_nb: optimizer failed to converge", report);
    return report;
}

fit_report fit_cmp(const frequency_data& data, const fit_options& options) {
    data.validate();
    const double total = static_cast<double>(data.total());
    const bool truncated = data.truncated_at_zero;
    const double log_r_floor = std::log(0.3);

    const auto objective = [&](const std::vector<double>& q) -> double {
        if (q[0] < log_r_floor) {
            const double d = log_r_floor - q[0];
            return 1e10 * (1.0 + d * d);
        }
        const double r = std::exp(q[0]);
        const double log_lambda = q[1];
        // Keep the series mode exp(log_lambda / r) within a cheap term
        // budget; beyond it the normalizer is effectively divergent here.
        if (log_lambda > 12.2 * r) {
            const double d = log_lambda - 12.2 * r;
            return 1e10 * (1.0 + d * d);
        }
        try {
            const cmp_params cp{r, std::exp(log_lambda)};
            const double log_z = cmp_log_norm(cp);
            compensated_sum ll;
            for (const auto& row : data.rows)
                ll.add(static_cast<double>(row.frequency) *
                       (static_cast<double>(row.value) * log_lambda -
                        r * std::lgamma(static_cast<double>(row.value) + 1.0) - log_z));
            double value = ll.value();
            if (truncated) value -= total * std::log1p(-std::exp(-log_z));
            return guarded(-value);
        } catch (const std::exception&) {
            return 1e12;
        }
    };

    const double log_m = std::log(std::max(data.mean(), 0.1));
    std::vector<std::vector<double>> starts;
    for (double r0 : {0.5, 1.0, 2.0, 5.0, 10.0})
        starts.push_back({std::log(r0), r0 * log_m});  // lambda ~ mean^r keeps the mean

    const nelder_mead_result best = minimize_multistart(objective, starts, default_nm());
    const double r_hat = std::exp(best.x[0]);
    const double lambda_hat = std::exp(best.x[1]);
    const bool boundary = r_hat < 0.31 || std::fabs(best.x[1]) > 2.0 * transform_boundary;

    const cmp_params fitted{r_hat, lambda_hat};
    const double log_z = cmp_log_norm(fitted);
    const auto neg_ll_natural = [&](const std::vector<double>& nat) {
        return objective({std::log(nat[0]), std::log(nat[1])});
    };
    fit_report report = finish_two_param_report(
        data, "cmp", {"r", "lambda"}, {r_hat, lambda_hat}, -1, -best.f,
        best.converged, boundary,
        [&](int x) {
            return static_cast<double>(x) * best.x[1] -
                   r_hat * std::lgamma(static_cast<double>(x) + 1.0) - log_z;
        },
        neg_ll_natural, options);
    if (!best.converged) throw fit_error("fit_cmp: optimizer failed to converge", report);
    return report;
}

std::vector<double> bb_log_table(int n, double a, double b) {
    if (n < 0) throw std::invalid_argument("bb_log_table: n must be >= 0");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("bb_log_table: a, b must be > 0");
    const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
    // Cumulative log products: la[x] = sum_{i<x} log(a+i), etc.
    std::vector<double> la(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> lb(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> lab(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        la[static_cast<std::size_t>(i) + 1] = la[static_cast<std::size_t>(i)] + std::log(a + i);
        lb[static_cast<std::size_t>(i) + 1] = lb[static_cast<std::size_t>(i)] + std::log(b + i);
        lab[static_cast<std::size_t>(i) + 1] =
            lab[static_cast<std::size_t>(i)] + std::log(a + b + i);
    }
    std::vector<double> lp(static_cast<std::size_t>(n) + 1);
    for (int x = 0; x <= n; ++x) {
        const double log_choose = lg_n - std::lgamma(static_cast<double>(x) + 1.0) -
                                  std::lgamma(static_cast<double>(n - x) + 1.0);
        lp[static_cast<std::size_t>(x)] = log_choose + la[static_cast<std::size_t>(x)] +
                                          lb[static_cast<std::size_t>(n - x)] -
                                          lab[static_cast<std::size_t>(n)];
    }
    return lp;
}

namespace {

fit_report fit_bounded_two_param(
    const frequency_data& data, int n, const fit_options& options,
    const std::string& model, const std::vector<std::string>& names,
    const std::function<std::vector<double>(const std::vector<double>&)>& log_table_fn,
    const std::function<std::vector<double>(double, double)>& starts_fn,
    const std::function<std::vector<double>(const std::vector<double>&)>& to_natural,
    const std::function<std::vector<double>(const std::vector<double>&)>& from_natural,
    const std::function<bool(const std::vector<double>&)>& boundary_fn,
    const std::string& boundary_note) {
    data.validate();
    if (n < data.max_value())
        throw std::invalid_argument("fit: n is smaller than the largest observed value");
    const bool truncated = data.truncated_at_zero;

    const auto loglik_at = [&](const std::vector<double>& q) -> double {
        const std::vector<double> lp = log_table_fn(q);
        double log_tail = 0.0;
        if (truncated) log_tail = log_sum_exp(lp.data() + 1, lp.size() - 1);
        compensated_sum ll;
        for (const auto& row : data.rows)
            ll.add(static_cast<double>(row.frequency) *
                   (lp[static_cast<std::size_t>(row.value)] - log_tail));
        return ll.value();
    };
    const auto objective = [&](const std::vector<double>& q) -> double {
        try {
            return guarded(-loglik_at(q));
        } catch (const std::exception&) {
            return 1e12;
        }
    };

    std::vector<std::vector<double>> starts;
    {
        const std::vector<double> base = starts_fn(data.mean(), static_cast<double>(n));
        for (std::size_t i = 0; i + 1 < base.size(); i += 2)
            starts.push_back({base[i], base[i + 1]});
    }
    const nelder_mead_result best = minimize_multistart(objective, starts, default_nm());

    const std::vector<double> natural = to_natural(best.x);
    const bool boundary = boundary_fn(best.x);
    const std::vector<double> lp_hat = log_table_fn(best.x);

    const auto neg_ll_natural = [&](const std::vector<double>& nat) {
        return objective(from_natural(nat));
    };
    fit_report report = finish_two_param_report(
        data, model, names, natural, n, -best.f, best.converged, boundary,
        [&](int x) { return lp_hat[static_cast<std::size_t>(x)]; }, neg_ll_natural,
        options);
    if (boundary && !boundary_note.empty()) {
        if (!report.notes.empty()) report.notes += "; ";
        report.notes += boundary_note;
    }
    if (!best.converged)
        throw fit_error("fit_" + model + ": optimizer failed to converge", report);
    return report;
}

fit_report profile_over_n(const frequency_data& data, const fit_options& options,
                          const std::function<fit_report(const frequency_data&, int,
                                                         const fit_options&)>& fixed_fit) {
    data.validate();
    const int lo = data.max_value();
    const int hi = lo + 30;
    std::optional<fit_report> best;
    for (int n = lo; n <= hi; ++n) {
        try {
            fit_report r = fixed_fit(data, n, options);
            if (!best || r.loglik > best->loglik) best = std::move(r);
        } catch (const fit_error&) {
        }
    }
    if (!best)
        throw fit_error("profile fit: no n in the range produced a converged fit",
                        fit_report{});
    best->profile_n = true;
    if (best->n == hi) {
        best->boundary_solution = true;
        if (!best->notes.empty()) best->notes += "; ";
        best->notes += "profile likelihood still increasing at the top of the n range";
    }
    return *best;
}

}  // namespace

fit_report fit_bb(const frequency_data& data, int n, const fit_options& options) {
    return fit_bounded_two_param(
        data, n, options, "bb", {"a", "b"},
        [n](const std::vector<double>& q) {
            return bb_log_table(n, std::exp(q[0]), std::exp(q[1]));
        },
        [](double m, double nd) {
            const double q = std::clamp(m / nd, 1e-6, 1.0 - 1e-6);
            std::vector<double> flat;
            for (double s0 : {1.0, 10.0, 100.0, 1000.0}) {
                flat.push_back(std::log(q * s0));
                flat.push_back(std::log((1.0 - q) * s0));
            }
            return flat;
        },
        [](const std::vector<double>& q) {
            return std::vector<double>{std::exp(q[0]), std::exp(q[1])};
        },
        [](const std::vector<double>& nat) {
            return std::vector<double>{std::log(nat[0]), std::log(nat[1])};
        },
        [](const std::vector<double>& q) {
            return q[0] > transform_boundary || q[1] > transform_boundary;
        },
        "boundary drift: a, b -> inf (binomial limit)");
}

fit_report fit_bb_profile(const frequency_data& data, const fit_options& options) {
    return profile_over_n(data, options,
                          [](const frequency_data& d, int n, const fit_options& o) {
                              return fit_bb(d, n, o);
                          });
}

fit_report fit_cmpb(const frequency_data& data, int n, const fit_options& options) {
    return fit_bounded_two_param(
        data, n, options, "cmpb", {"alpha", "psi"},
        [n](const std::vector<double>& q) {
            if (std::fabs(q[0]) > parameter_cap || std::fabs(q[1]) > parameter_cap)
                throw std::domain_error("outside parameter cap");
            const prob_table t = build_table({n, q[0], q[0], q[1]});
            std::vector<double> lp(t.log_weights.size());
            for (std::size_t x = 0; x < lp.size(); ++x)
                lp[x] = t.log_weights[x] - t.log_norm;
            return lp;
        },
        [](double m, double nd) {
            const double frac = std::clamp(m / nd, 1e-6, 1.0 - 1e-6);
            return std::vector<double>{1.0, 0.0,
                                       0.0, 0.0,
                                       2.0, 0.0,
                                       1.0, std::log(frac / (1.0 - frac)),
                                       0.5, 1.0};
        },
        [](const std::vector<double>& q) { return q; },
        [](const std::vector<double>& nat) { return nat; },
        [](const std::vector<double>& q) {
            return std::fabs(q[0]) > parameter_cap - 1e-6 ||
                   std::fabs(q[1]) > parameter_cap - 1e-6;
        },
        "");
}

fit_report fit_cmpb_profile(const frequency_data& data, const fit_options& options) {
    return profile_over_n(data, options,
                          [](const frequency_data& d, int n, const fit_options& o) {
                              return fit_cmpb(d, n, o);
                          });
}

model_comparison compare_models(const frequency_data& data, const fit_options& options) {
    model_comparison out;
    out.mcmpb = fit_profile_n(data, options);
    out.shared_n = out.mcmpb.n;
    out.cmpb = fit_cmpb(data, out.shared_n, options);
    out.bb = fit_bb(data, out.shared_n, options);
    out.nb = fit_nb(data, options);
    out.cmp = fit_cmp(data, options);
    return out;
}

}  // namespace mcmpb
