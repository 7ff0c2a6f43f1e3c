// Numerical building blocks: compensated summation, streaming log-sum-exp,
// the regularized incomplete gamma function (for chi-square tail
// probabilities), a small dense 3x3 solver, and a Nelder-Mead simplex
// minimizer.  Everything here is deterministic and allocation-light.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace mcmpb {

// Kahan-compensated accumulator.
class compensated_sum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// log(sum_i exp(v[i])) with a single max subtraction.
double log_sum_exp(const double* v, std::size_t count);
double log_sum_exp(const std::vector<double>& v);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// computed by the lower series for x < a + 1 and by a modified Lentz
// continued fraction otherwise.  Accurate to ~1e-12 for a, x in the ranges
// that arise from chi-square statistics.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper-tail probability of the chi-square distribution with df degrees of
// freedom evaluated at statistic x.
double chi_square_upper_tail(double x, int df);

// Two-sided 95% normal quantile used for confidence intervals.
inline constexpr double z_95 = 1.959964;

// Solves A x = b for a symmetric 3x3 system by Gaussian elimination with
// partial pivoting; also exposes the inverse and an infinity-norm condition
// estimate.  Throws std::runtime_error when the matrix is numerically
// singular.
struct matrix3 {
    std::array<std::array<double, 3>, 3> m{};

    matrix3 inverse() const;
    double norm_inf() const;
    double condition() const;  // norm_inf(A) * norm_inf(inv(A))
};

// --- Nelder-Mead ----------------------------------------------------------

struct nelder_mead_options {
    int max_iterations = 2000;
    double x_tolerance = 1e-8;    // simplex diameter (infinity norm)
    double f_tolerance = 1e-10;   // objective spread across the simplex
    double initial_step = 0.5;    // per-coordinate offset for the simplex
};

struct nelder_mead_result {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Minimizes f starting from the axis-aligned simplex around x0.
// Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
nelder_mead_result nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const nelder_mead_options& options = {});

// Runs nelder_mead from every start and keeps the lowest minimum.
nelder_mead_result minimize_multistart(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::vector<double>>& starts,
    const nelder_mead_options& options = {});

// Deterministic uniform(0,1) draw from a 64-bit generator word: the top 53
// bits are centered on the representable grid so the result is never 0 or 1.
inline double uniform_from_bits(std::uint64_t word) {
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace mcmpb
