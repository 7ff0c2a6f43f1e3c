// Core distribution: a bounded count model on {0, ..., n} whose probability
// mass function is
//
//     P(X = x) = theta^x / (x!^alpha (n-x)!^beta C_n(alpha, beta, theta)),
//
// parameterized here by psi = log(theta).  It is a three-parameter
// exponential family with natural parameters (psi, -alpha, -beta) paired
// with the statistics (X, log X!, log (n-X)!).  Both factorial exponents may
// be negative, which is what produces over-dispersion and bimodality.
//
// All mass functions are assembled in the log domain from the adjacent
// ratio
//
//     a_{x+1} / a_x = theta (n-x)^beta / (x+1)^alpha,
//
// with compensated prefix sums and a running-max rescaling, so tables stay
// finite for |alpha|, |beta|, |psi| up to the supported cap of 50 and n up
// to at least 10^4.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mcmpb {

// Largest admissible magnitude for alpha, beta and psi.  Values beyond the
// cap raise std::invalid_argument rather than being clamped.
inline constexpr double parameter_cap = 50.0;

struct params {
    int n = 0;          // support is {0, ..., n}, n >= 1
    double alpha = 1.0; // exponent on x!
    double beta = 1.0;  // exponent on (n-x)!
    double psi = 0.0;   // log(theta)

    double theta() const;
    void validate() const;  // throws std::invalid_argument when out of range
};

// Fully materialized distribution table.
struct prob_table {
    int n = 0;
    // log weights after subtracting their running maximum; log_norm is the
    // log normalizing sum on the same scale, so
    // log pmf[x] = log_weights[x] - log_norm exactly.
    std::vector<double> log_weights;
    double log_norm = 0.0;
    // log of the absolute normalizing constant C_n (no rescaling), needed by
    // likelihood evaluations.
    double log_norm_absolute = 0.0;
    std::vector<double> pmf;
    std::vector<double> cdf;

    double log_pmf(int x) const;
};

prob_table build_table(const params& p);

// log P(X = x); throws std::domain_error when x is outside {0, ..., n}.
double log_pmf(const params& p, int x);

struct moment_set {
    double mean = 0.0;
    // Raw moments E[X^k], k = 1..4.
    std::array<double, 4> raw{};
    // Central moments mu_2..mu_4 (mu_1 is identically 0 and omitted).
    double mu2 = 0.0, mu3 = 0.0, mu4 = 0.0;
    double dispersion_index = 0.0;  // mu2 / mean
    double skewness = 0.0;          // mu3 / mu2^{3/2}
    double excess_kurtosis = 0.0;   // mu4 / mu2^2 - 3
};

moment_set moments(const params& p);
moment_set moments(const prob_table& table);

// Mean vector and covariance matrix of the sufficient statistics
// T = (X, log X!, log (n-X)!) under the law given by `table`.  When
// `truncated` is set the law is conditioned on X >= 1.  The covariance of T
// is the Fisher information per observation for the natural parameterization
// (psi, -alpha, -beta); its entries also realize the derivative identities
// of the log normalizing constant (mixed second derivatives in (psi, alpha,
// beta) equal signed covariances of T).
struct stat_moments {
    std::array<double, 3> mean{};
    std::array<std::array<double, 3>, 3> cov{};
};

stat_moments sufficient_stat_moments(const prob_table& table, bool truncated = false);

// Draws `count` variates by cdf inversion.  Consumes exactly one 64-bit
// generator word per draw.
std::vector<int> sample(const params& p, std::size_t count, std::mt19937_64& rng);
std::vector<int> sample(const params& p, std::size_t count, std::uint64_t seed);

// The reflection X -> n - X maps parameters (n, alpha, beta, psi) to
// (n, beta, alpha, -psi).
params reflect(const params& p);

enum class modality_kind { unimodal, bimodal, flat_pair, uniform };

struct modality {
    modality_kind kind = modality_kind::unimodal;
    int mode_low = 0;   // the mode; for bimodal/flat_pair the smaller one
    int mode_high = 0;  // equals mode_low for unimodal
};

std::string to_string(modality_kind kind);

// Classifies the shape of the pmf.  For alpha, beta > 0 the law is strictly
// log-concave with a single (interior for n >= 2) mode; for alpha, beta < 0
// the mass concentrates on one or both endpoints depending on how theta
// compares with n^alpha and n^{-beta}.  Mixed signs are resolved by direct
// inspection of the table.
modality classify_modality(const params& p);

// True when log pmf is concave along the support:
// log P(x+1) + log P(x-1) <= 2 log P(x) + slack for every interior x.
bool is_log_concave(const params& p, double slack = 1e-12);

// Stein-type characterization residual
//   E[ theta (n-X)^beta f(X+1) - X^alpha f(X) ]
// evaluated under `p` for a bounded test function f given on {0, ..., n+1}.
// The rate factors vanish at the boundary states (no factor is evaluated at
// 0), matching the birth-death reading of the recurrence; under that
// convention the residual is exactly zero for the matching law.
double stein_residual(const params& p, const std::vector<double>& f);

// The w-power-biased pmf: pmf'[x] proportional to x^w pmf[x] (0^0 = 1).
// Throws std::domain_error when E[X^w] is zero or non-finite.
std::vector<double> power_bias(const std::vector<double>& pmf, double w);

// Exchangeable-correlation summaries of the dependent Bernoulli genesis: n
// indicators whose sum follows the bounded law with theta = p/(1-p).  At
// alpha = beta = 1 the indicators are i.i.d. Bernoulli(p) and the
// correlation vanishes; otherwise its sign is the sign of
// 2^{alpha-beta} - 4^{alpha-1}.
double bernoulli_indicator_mean(double alpha, double beta, double theta);
double bernoulli_indicator_correlation(double alpha, double beta, double theta);

}  // namespace mcmpb
