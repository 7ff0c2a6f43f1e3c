#include "mcmpb/cmp.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mcmpb/numeric.hpp"

namespace mcmpb {

void cmp_params::validate() const {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("cmp_params: r must be > 0");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("cmp_params: lambda must be > 0");
    if (!(tail_tol > 0.0) || !(tail_tol < 1e-6))
        throw std::invalid_argument("cmp_params: tail_tol must be in (0, 1e-6)");
}

double cmp_log_norm(const cmp_params& p) {
    p.validate();
    if (p.r < 0.3)
        throw std::invalid_argument(
            "cmp_log_norm: r < 0.3 is numerically near-divergent; refused");

    constexpr std::size_t term_cap = 1000000;
    const double log_lambda = std::log(p.lambda);
    const double log_tol = std::log(p.tail_tol);

    // Streaming log-sum-exp: log_sum holds log of the partial series.
    double log_sum = 0.0;  // k = 0 term is 1
    double prev_log_term = 0.0;
    for (std::size_t k = 1; k <= term_cap; ++k) {
        const double log_term =
            static_cast<double>(k) * log_lambda - p.r * std::lgamma(static_cast<double>(k) + 1.0);
        const double m = std::max(log_sum, log_term);
        log_sum = m + std::log(std::exp(log_sum - m) + std::exp(log_term - m));
        const bool decreasing = log_term < prev_log_term;
        if (decreasing && log_term - log_sum < log_tol) return log_sum;
        prev_log_term = log_term;
    }
    std::ostringstream msg;
    msg << "cmp_log_norm: series did not converge within " << term_cap
        << " terms (partial log sum " << log_sum << ")";
    throw std::runtime_error(msg.str());
}

double cmp_log_pmf(const cmp_params& p, int x) {
    if (x < 0) throw std::domain_error("cmp_log_pmf: x must be >= 0");
    return static_cast<double>(x) * std::log(p.lambda) -
           p.r * std::lgamma(static_cast<double>(x) + 1.0) - cmp_log_norm(p);
}

double cmp_pmf(const cmp_params& p, int x) { return std::exp(cmp_log_pmf(p, x)); }

double truncated_cmp_pmf(const cmp_params& p, int n, int x) {
    p.validate();
    if (n < 0) throw std::invalid_argument("truncated_cmp_pmf: n must be >= 0");
    if (x < 0 || x > n)
        throw std::domain_error("truncated_cmp_pmf: x outside {0, ..., n}");
    std::vector<double> lw(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        lw[static_cast<std::size_t>(k)] =
            static_cast<double>(k) * std::log(p.lambda) -
            p.r * std::lgamma(static_cast<double>(k) + 1.0);
    return std::exp(lw[static_cast<std::size_t>(x)] - log_sum_exp(lw));
}

std::vector<double> cmpb_table(int n, double alpha, double psi) {
    if (n < 0) throw std::invalid_argument("cmpb_table: n must be >= 0");
    const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<double> lw(static_cast<std::size_t>(n) + 1);
    for (int x = 0; x <= n; ++x) {
        const double log_choose = lg_n - std::lgamma(static_cast<double>(x) + 1.0) -
                                  std::lgamma(static_cast<double>(n - x) + 1.0);
        lw[static_cast<std::size_t>(x)] = alpha * log_choose + static_cast<double>(x) * psi;
    }
    const double norm = log_sum_exp(lw);
    std::vector<double> out(lw.size());
    for (std::size_t x = 0; x < lw.size(); ++x) out[x] = std::exp(lw[x] - norm);
    return out;
}

double cmpb_pmf(int n, double alpha, double psi, int x) {
    if (x < 0 || x > n) throw std::domain_error("cmpb_pmf: x outside {0, ..., n}");
    return cmpb_table(n, alpha, psi)[static_cast<std::size_t>(x)];
}

params conditional_given_sum(const bivariate_cmp_spec& spec, int n) {
    spec.first.validate();
    spec.second.validate();
    if (n < 1) throw std::invalid_argument("conditional_given_sum: n must be >= 1");
    params out;
    out.n = n;
    out.alpha = spec.first.r;
    out.beta = spec.second.r;
    out.psi = std::log(spec.first.lambda) - std::log(spec.second.lambda);
    return out;
}

}  // namespace mcmpb
