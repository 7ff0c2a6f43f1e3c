#include "mcmpb/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mcmpb/numeric.hpp"

namespace mcmpb {

double params::theta() const { return std::exp(psi); }

void params::validate() const {
    if (n < 1) throw std::invalid_argument("params: n must be >= 1");
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(psi))
        throw std::invalid_argument("params: alpha, beta, psi must be finite");
    if (std::fabs(alpha) > parameter_cap || std::fabs(beta) > parameter_cap ||
        std::fabs(psi) > parameter_cap) {
        std::ostringstream msg;
        msg << "params: |alpha|, |beta|, |psi| must be <= " << parameter_cap;
        throw std::invalid_argument(msg.str());
    }
}

prob_table build_table(const params& p) {
    p.validate();
    const int n = p.n;
    prob_table t;
    t.n = n;
    t.log_weights.assign(static_cast<std::size_t>(n) + 1, 0.0);

    // Prefix sums of the adjacent log ratios, with the weight at 0 pinned to
    // log 1 = 0; the absolute weight at 0 is -beta * log(n!).
    compensated_sum prefix;
    double running_max = 0.0;
    for (int x = 0; x < n; ++x) {
        const double log_ratio = p.psi + p.beta * std::log(static_cast<double>(n - x)) -
                                 p.alpha * std::log(static_cast<double>(x + 1));
        prefix.add(log_ratio);
        t.log_weights[static_cast<std::size_t>(x) + 1] = prefix.value();
        running_max = std::max(running_max, prefix.value());
    }
    for (double& w : t.log_weights) w -= running_max;

    compensated_sum norm;
    for (double w : t.log_weights) norm.add(std::exp(w));
    t.log_norm = std::log(norm.value());
    t.log_norm_absolute =
        running_max + t.log_norm - p.beta * std::lgamma(static_cast<double>(n) + 1.0);

    t.pmf.resize(t.log_weights.size());
    t.cdf.resize(t.log_weights.size());
    compensated_sum cum;
    for (std::size_t x = 0; x < t.pmf.size(); ++x) {
        t.pmf[x] = std::exp(t.log_weights[x] - t.log_norm);
        cum.add(t.pmf[x]);
        t.cdf[x] = std::min(1.0, cum.value());
    }
    return t;
}

double prob_table::log_pmf(int x) const {
    if (x < 0 || x > n)
        throw std::domain_error("prob_table::log_pmf: x outside {0, ..., n}");
    return log_weights[static_cast<std::size_t>(x)] - log_norm;
}

double log_pmf(const params& p, int x) {
    if (x < 0 || x > p.n) throw std::domain_error("log_pmf: x outside {0, ..., n}");
    // Closed form: x*psi - alpha*log(x!) - beta*log((n-x)!) - log C.  This is an
    // independent evaluation path from prob_table::log_pmf (which reads the
    // recurrence-built weights), so the two can be cross-checked.
    const prob_table table = build_table(p);
    return static_cast<double>(x) * p.psi - p.alpha * std::lgamma(static_cast<double>(x) + 1.0) -
           p.beta * std::lgamma(static_cast<double>(p.n - x) + 1.0) - table.log_norm_absolute;
}

namespace {

moment_set moments_from_pmf(const std::vector<double>& pmf) {
    moment_set m;
    for (int k = 0; k < 4; ++k) {
        compensated_sum s;
        for (std::size_t x = 0; x < pmf.size(); ++x)
            s.add(pmf[x] * std::pow(static_cast<double>(x), k + 1));
        m.raw[static_cast<std::size_t>(k)] = s.value();
    }
    m.mean = m.raw[0];
    compensated_sum c2, c3, c4;
    for (std::size_t x = 0; x < pmf.size(); ++x) {
        const double d = static_cast<double>(x) - m.mean;
        c2.add(pmf[x] * d * d);
        c3.add(pmf[x] * d * d * d);
        c4.add(pmf[x] * d * d * d * d);
    }
    m.mu2 = c2.value();
    m.mu3 = c3.value();
    m.mu4 = c4.value();
    m.dispersion_index = m.mu2 / m.mean;
    m.skewness = m.mu3 / std::pow(m.mu2, 1.5);
    m.excess_kurtosis = m.mu4 / (m.mu2 * m.mu2) - 3.0;
    return m;
}

}  // namespace

moment_set moments(const prob_table& table) { return moments_from_pmf(table.pmf); }

moment_set moments(const params& p) { return moments(build_table(p)); }

stat_moments sufficient_stat_moments(const prob_table& table, bool truncated) {
    const std::size_t first = truncated ? 1 : 0;
    if (first >= table.pmf.size())
        throw std::domain_error("sufficient_stat_moments: empty truncated support");

    double total = 0.0;
    for (std::size_t x = first; x < table.pmf.size(); ++x) total += table.pmf[x];
    if (!(total > 0.0))
        throw std::domain_error("sufficient_stat_moments: no mass on support");

    stat_moments out;
    std::array<compensated_sum, 3> mean_acc;
    for (std::size_t x = first; x < table.pmf.size(); ++x) {
        const double w = table.pmf[x] / total;
        const double xv = static_cast<double>(x);
        const double t0 = xv;
        const double t1 = std::lgamma(xv + 1.0);
        const double t2 = std::lgamma(static_cast<double>(table.n) - xv + 1.0);
        mean_acc[0].add(w * t0);
        mean_acc[1].add(w * t1);
        mean_acc[2].add(w * t2);
    }
    for (int i = 0; i < 3; ++i) out.mean[static_cast<std::size_t>(i)] = mean_acc[static_cast<std::size_t>(i)].value();

    std::array<std::array<compensated_sum, 3>, 3> cov_acc;
    for (std::size_t x = first; x < table.pmf.size(); ++x) {
        const double w = table.pmf[x] / total;
        const double xv = static_cast<double>(x);
        const std::array<double, 3> t = {
            xv, std::lgamma(xv + 1.0),
            std::lgamma(static_cast<double>(table.n) - xv + 1.0)};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                cov_acc[i][j].add(w * (t[i] - out.mean[i]) * (t[j] - out.mean[j]));
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out.cov[i][j] = cov_acc[i][j].value();
    return out;
}

std::vector<int> sample(const params& p, std::size_t count, std::mt19937_64& rng) {
    const prob_table table = build_table(p);
    std::vector<int> draws;
    draws.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = uniform_from_bits(rng());
        int x = table.n;  // fallback when u exceeds every partial sum
        for (int k = 0; k <= table.n; ++k) {
            if (u < table.cdf[static_cast<std::size_t>(k)]) {
                x = k;
                break;
            }
        }
        draws.push_back(x);
    }
    return draws;
}

std::vector<int> sample(const params& p, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample(p, count, rng);
}

params reflect(const params& p) {
    p.validate();
    return {p.n, p.beta, p.alpha, -p.psi};
}

std::string to_string(modality_kind kind) {
    switch (kind) {
        case modality_kind::unimodal: return "unimodal";
        case modality_kind::bimodal: return "bimodal";
        case modality_kind::flat_pair: return "flat-pair";
        case modality_kind::uniform: return "uniform";
    }
    return "unknown";
}

namespace {

// Collects local maxima of the pmf treating ties within relative tolerance
// as plateaus.
modality classify_by_scan(const prob_table& t) {
    const std::size_t size = t.pmf.size();
    const double peak = *std::max_element(t.pmf.begin(), t.pmf.end());
    const double tol = peak * 1e-12;

    bool all_equal = true;
    for (double v : t.pmf)
        if (std::fabs(v - t.pmf[0]) > tol) { all_equal = false; break; }
    if (all_equal && size > 1) return {modality_kind::uniform, 0, t.n};

    // Indices achieving the maximum.
    std::vector<int> arg_max;
    for (std::size_t x = 0; x < size; ++x)
        if (peak - t.pmf[x] <= tol) arg_max.push_back(static_cast<int>(x));
    if (arg_max.size() == 2 && arg_max[1] == arg_max[0] + 1)
        return {modality_kind::flat_pair, arg_max[0], arg_max[1]};

    // Strict local maxima (plateau-aware): count runs that dominate both
    // neighbors.
    std::vector<int> peaks;
    std::size_t x = 0;
    while (x < size) {
        std::size_t end = x;
        while (end + 1 < size && std::fabs(t.pmf[end + 1] - t.pmf[x]) <= tol) ++end;
        const bool left_ok = (x == 0) || (t.pmf[x - 1] < t.pmf[x] - tol);
        const bool right_ok = (end + 1 == size) || (t.pmf[end + 1] < t.pmf[x] - tol);
        if (left_ok && right_ok) peaks.push_back(static_cast<int>(x));
        x = end + 1;
    }
    if (peaks.size() >= 2)
        return {modality_kind::bimodal, peaks.front(), peaks.back()};
    const int mode = arg_max.front();
    return {modality_kind::unimodal, mode, mode};
}

}  // namespace

modality classify_modality(const params& p) {
    p.validate();
    const prob_table t = build_table(p);
    if (p.n == 0) return {modality_kind::unimodal, 0, 0};

    if (p.alpha < 0.0 && p.beta < 0.0) {
        // Mass escapes to the endpoints; the interior is log-convex.  theta
        // below n^alpha pins the mode at 0, above n^{-beta} at n, strictly
        // between gives both endpoints as modes.
        const double theta = p.theta();
        const double lo = std::pow(static_cast<double>(p.n), p.alpha);
        const double hi = std::pow(static_cast<double>(p.n), -p.beta);
        if (theta < lo) return {modality_kind::unimodal, 0, 0};
        if (theta > hi) return {modality_kind::unimodal, p.n, p.n};
        if (theta > lo && theta < hi) return {modality_kind::bimodal, 0, p.n};
        // Equality cases fall through to the scan.
    }
    return classify_by_scan(t);
}

bool is_log_concave(const params& p, double slack) {
    const prob_table t = build_table(p);
    for (int x = 1; x < t.n; ++x) {
        const double lhs = t.log_weights[static_cast<std::size_t>(x) + 1] +
                           t.log_weights[static_cast<std::size_t>(x) - 1];
        const double rhs = 2.0 * t.log_weights[static_cast<std::size_t>(x)];
        if (lhs > rhs + slack) return false;
    }
    return true;
}

double stein_residual(const params& p, const std::vector<double>& f) {
    p.validate();
    if (f.size() < static_cast<std::size_t>(p.n) + 2)
        throw std::invalid_argument(
            "stein_residual: f must be given on {0, ..., n+1}");
    const prob_table t = build_table(p);
    const double theta = p.theta();
    compensated_sum acc;
    for (int x = 0; x <= p.n; ++x) {
        const double birth =
            (x < p.n) ? theta * std::pow(static_cast<double>(p.n - x), p.beta)
                      : 0.0;
        const double death =
            (x > 0) ? std::pow(static_cast<double>(x), p.alpha) : 0.0;
        acc.add(t.pmf[static_cast<std::size_t>(x)] *
                (birth * f[static_cast<std::size_t>(x) + 1] -
                 death * f[static_cast<std::size_t>(x)]));
    }
    return acc.value();
}

std::vector<double> power_bias(const std::vector<double>& pmf, double w) {
    if (pmf.empty()) throw std::invalid_argument("power_bias: empty pmf");
    std::vector<double> weighted(pmf.size());
    compensated_sum norm;
    for (std::size_t x = 0; x < pmf.size(); ++x) {
        weighted[x] = std::pow(static_cast<double>(x), w) * pmf[x];
        norm.add(weighted[x]);
    }
    const double total = norm.value();
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::domain_error("power_bias: E[X^w] is zero or non-finite");
    for (double& v : weighted) v /= total;
    return weighted;
}

double bernoulli_indicator_mean(double alpha, double beta, double theta) {
    const double a1 = std::pow(2.0, alpha - 1.0);
    const double ab = std::pow(2.0, alpha - beta);
    const double a0 = std::pow(2.0, alpha);
    return (a1 * theta + theta * theta) / (ab + a0 * theta + theta * theta);
}

double bernoulli_indicator_correlation(double alpha, double beta, double theta) {
    const double a1 = std::pow(2.0, alpha - 1.0);
    const double ab = std::pow(2.0, alpha - beta);
    // Second-order Bahadur truncation (higher-order correlations assumed
    // zero); only the alpha = beta = 1 value and the sign are exact.
    const double num = theta * (ab - std::pow(4.0, alpha - 1.0));
    const double den = (1.0 + theta) * (a1 + theta) * (ab + a1 * theta);
    return num / den;
}

}  // namespace mcmpb
