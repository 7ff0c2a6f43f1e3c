// Maximum-likelihood inference for the bounded two-exponent law: fixed-n and
// profile-n fits (optionally zero-truncated), Fisher information, 95%
// confidence intervals, goodness-of-fit summaries, and a Monte Carlo study
// of the estimators.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcmpb/data.hpp"
#include "mcmpb/distribution.hpp"
#include "mcmpb/gof.hpp"
#include "mcmpb/numeric.hpp"

namespace mcmpb {

struct fit_report {
    std::string model;                      // mcmpb | cmpb | bb | nb | cmp
    int n = -1;                             // support bound; -1 when unbounded
    bool profile_n = false;                 // n chosen by profile likelihood
    std::vector<std::string> param_names;
    std::vector<double> estimates;
    std::vector<double> se;                 // empty when unavailable
    std::vector<std::array<double, 2>> ci95;
    bool ci_available = false;
    double loglik = 0.0;
    double aic = 0.0;
    gof_summary gof;
    std::vector<int> values;                // observed support rows
    std::vector<long long> observed;
    std::vector<double> expected;           // fitted frequencies per row
    bool truncated = false;
    bool converged = false;
    bool boundary_solution = false;         // optimum drifted to a parameter boundary
    bool moment_equations_ok = true;        // likelihood equations verified (untruncated)
    std::string notes;

    bool operator==(const fit_report&) const = default;
};

// Raised when no optimizer restart converges; carries the best point found.
class fit_error : public std::runtime_error {
public:
    fit_error(const std::string& what_arg, fit_report best);
    const fit_report& best() const { return best_; }

private:
    fit_report best_;
};

// Log likelihood of the bounded law at p given frequency data.  Untruncated
// data uses the sufficient-statistic form
//   N (psi S1 + alpha S2 + beta S3 - log C*_n);
// zero-truncated data sums f_i [log pmf(i) - log P(X >= 1)] directly.
double log_likelihood(const frequency_data& data, const params& p);

struct fit_options {
    bool with_gof = true;          // fill chi-square/expected fields
    double merge_threshold = 5.0;  // cell-merging threshold for the chi-square
};

// Maximum likelihood over (alpha, beta, psi) at fixed n by Nelder-Mead from
// five deterministic starts.  Throws fit_error when no restart converges.
fit_report fit_fixed_n(const frequency_data& data, int n, const fit_options& options = {});

// Profile likelihood over n: runs fit_fixed_n for each n in
// [n_low, n_high] (default [max count, max count + 30]) and keeps the
// largest maximized likelihood, ties toward the smallest n.
fit_report fit_profile_n(const frequency_data& data, const fit_options& options = {});
fit_report fit_profile_n(const frequency_data& data, int n_low, int n_high,
                         const fit_options& options = {});

// Fisher information per observation: the covariance matrix of the
// sufficient statistics (X, log X!, log (n-X)!) under the law p (conditioned
// on X >= 1 when truncated).  The asymptotic covariance of the estimates is
// its inverse divided by N.
matrix3 fisher_information(const params& p, bool truncated = false);

// sqrt(diag(fisher^-1) / N) in statistic order (psi, alpha, beta).  Throws
// std::runtime_error when the matrix is singular or its condition number
// reaches 1e12.
std::array<double, 3> standard_errors(const matrix3& fisher, double n_obs);

// --- Monte Carlo study of the estimators ----------------------------------

struct sim_config {
    params truth;
    int sample_size = 100;
    int reps = 100;
};

struct sim_param_summary {
    double bias = 0.0;
    double mse = 0.0;
    int covered = 0;  // count of reps whose 95% CI contains the truth
};

struct sim_result {
    sim_config config;
    // Summaries in estimate order (alpha, beta, psi).
    std::array<sim_param_summary, 3> by_param{};
    int reps_used = 0;
    int fit_failures = 0;
};

std::vector<sim_result> simulation_study(const std::vector<sim_config>& configs,
                                         std::uint64_t seed);

}  // namespace mcmpb
