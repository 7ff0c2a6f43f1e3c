// Conway-Maxwell-Poisson (CMP) family: the unbounded CMP law, its
// right-truncated version, the CMP-binomial (CMPB), and the conditional
// construction that ties two independent CMP variables to the bounded
// two-exponent law: if X1 ~ CMP(alpha, lambda1) and X2 ~ CMP(beta, lambda2)
// are independent, then X1 | X1 + X2 = n follows the bounded law with
// parameters (n, alpha, beta, psi = log(lambda1/lambda2)).
#pragma once

#include "mcmpb/distribution.hpp"

namespace mcmpb {

struct cmp_params {
    double r = 1.0;            // dispersion exponent on k!
    double lambda = 1.0;       // rate
    double tail_tol = 1e-14;   // relative series truncation tolerance

    void validate() const;     // throws std::invalid_argument
};

struct bivariate_cmp_spec {
    cmp_params first;   // (alpha, lambda1)
    cmp_params second;  // (beta, lambda2)
};

// log Z(lambda, r) with Z = sum_k lambda^k / (k!)^r, summed in the log
// domain.  The series terms may grow before they decay (r < 1); summation
// stops once terms are decreasing and the latest term is below tail_tol
// relative to the running sum.  r < 0.3 is refused because the series is
// numerically near-divergent there; exceeding the 10^6-term cap raises an
// error that reports the partial sum.
double cmp_log_norm(const cmp_params& p);

double cmp_log_pmf(const cmp_params& p, int x);
double cmp_pmf(const cmp_params& p, int x);

// CMP truncated to {0, ..., n}; pointwise equal to the bounded law with
// parameters (n, r, 0, log lambda).
double truncated_cmp_pmf(const cmp_params& p, int n, int x);

// CMP-binomial: pmf proportional to binom(n, x)^alpha e^{x psi}; pointwise
// equal to the bounded law with parameters (n, alpha, alpha, psi).
double cmpb_pmf(int n, double alpha, double psi, int x);
std::vector<double> cmpb_table(int n, double alpha, double psi);

// Parameters of X1 | X1 + X2 = n for the independent CMP pair in `spec`.
params conditional_given_sum(const bivariate_cmp_spec& spec, int n);

}  // namespace mcmpb
