// Competitor count models fitted by the shared simplex optimizer: negative
// binomial, Conway-Maxwell-Poisson, beta-binomial, and CMP-binomial, each
// with AIC and chi-square goodness of fit, plus a side-by-side comparison
// driver.  Zero-truncated variants are supported throughout.
#pragma once

#include "mcmpb/data.hpp"
#include "mcmpb/fit.hpp"

namespace mcmpb {

// Negative binomial P(X=x) = C(r+x-1, x) p^x (1-p)^r (mean r p/(1-p)),
// fitted over (log r, logit p).
fit_report fit_nb(const frequency_data& data, const fit_options& options = {});

// CMP fitted over (log r, log lambda) with the series barrier r >= 0.3.
fit_report fit_cmp(const frequency_data& data, const fit_options& options = {});

// Beta-binomial P(X=x) = C(n, x) B(a+x, b+n-x) / B(a, b) at fixed n, fitted
// over (log a, log b).  The log pmf is assembled from the product form
//   prod_{i<x} (a+i) * prod_{j<n-x} (b+j) / prod_{k<n} (a+b+k)
// which stays exact when a, b drift to very large values (where log-gamma
// differencing loses the likelihood to cancellation).
fit_report fit_bb(const frequency_data& data, int n, const fit_options& options = {});
fit_report fit_bb_profile(const frequency_data& data, const fit_options& options = {});

// CMP-binomial: the bounded law constrained to alpha = beta, fitted over
// (alpha, psi) at fixed n.
fit_report fit_cmpb(const frequency_data& data, int n, const fit_options& options = {});
fit_report fit_cmpb_profile(const frequency_data& data, const fit_options& options = {});

// Beta-binomial log pmf table on {0, ..., n} (untruncated).
std::vector<double> bb_log_table(int n, double a, double b);

// Fits all five models for a side-by-side table.  The bounded-support
// competitors (CMPB, BB) are evaluated at the n chosen by the full model's
// profile likelihood: their own profiles over n are monotone on
// over-dispersed data (they run away toward the unbounded NB/CMP limits), so
// a common n is the only comparison that keeps the bounded families
// distinct.
struct model_comparison {
    fit_report mcmpb;
    fit_report cmpb;
    fit_report bb;
    fit_report nb;
    fit_report cmp;
    int shared_n = 0;
};

model_comparison compare_models(const frequency_data& data,
                                const fit_options& options = {});

}  // namespace mcmpb
