#include "mcmpb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcmpb {

double log_sum_exp(const double* v, std::size_t count) {
    if (count == 0) return -std::numeric_limits<double>::infinity();
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, v[i]);
    if (!std::isfinite(m)) return m;
    compensated_sum s;
    for (std::size_t i = 0; i < count; ++i) s.add(std::exp(v[i] - m));
    return m + std::log(s.value());
}

double log_sum_exp(const std::vector<double>& v) {
    return log_sum_exp(v.data(), v.size());
}

namespace {

// Lower incomplete gamma by power series: P(a,x) = x^a e^-x / Gamma(a+1) *
// sum_k x^k / ((a+1)...(a+k)).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction:
// Q(a,x) = x^a e^-x / Gamma(a) * 1/(x+1-a- 1*(1-a)/(x+3-a- ...)).
double gamma_q_continued_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x))
        throw std::invalid_argument("regularized_gamma_p: require a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x))
        throw std::invalid_argument("regularized_gamma_q: require a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_square_upper_tail(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi_square_upper_tail: df must be >= 1");
    if (!(x >= 0.0)) throw std::invalid_argument("chi_square_upper_tail: x must be >= 0");
    return regularized_gamma_q(0.5 * df, 0.5 * x);
}

matrix3 matrix3::inverse() const {
    // Gauss-Jordan with partial pivoting on the augmented system.
    double a[3][6];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            a[i][j] = m[i][j];
            a[i][j + 3] = (i == j) ? 1.0 : 0.0;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-300 || !std::isfinite(a[pivot][col]))
            throw std::runtime_error("matrix3::inverse: singular matrix");
        if (pivot != col)
            for (int j = 0; j < 6; ++j) std::swap(a[pivot][j], a[col][j]);
        const double inv_p = 1.0 / a[col][col];
        for (int j = 0; j < 6; ++j) a[col][j] *= inv_p;
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double factor = a[r][col];
            for (int j = 0; j < 6; ++j) a[r][j] -= factor * a[col][j];
        }
    }
    matrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.m[i][j] = a[i][j + 3];
    return out;
}

double matrix3::norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
        double row = 0.0;
        for (int j = 0; j < 3; ++j) row += std::fabs(m[i][j]);
        best = std::max(best, row);
    }
    return best;
}

double matrix3::condition() const { return norm_inf() * inverse().norm_inf(); }

nelder_mead_result nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const nelder_mead_options& options) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");

    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += options.initial_step;
    std::vector<double> vals(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(dim + 1);
    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[dim];
        const std::size_t second_worst = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 1; i <= dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                diameter = std::max(diameter,
                                    std::fabs(pts[order[i]][j] - pts[best][j]));
        const double spread = vals[worst] - vals[best];
        if (diameter < options.x_tolerance && spread < options.f_tolerance) {
            converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
        }
        for (std::size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j)
                p[j] = centroid[j] + t * (pts[worst][j] - centroid[j]);
            return p;
        };

        std::vector<double> reflected = blend(-1.0);
        const double f_reflected = f(reflected);
        if (f_reflected < vals[best]) {
            std::vector<double> expanded = blend(-2.0);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                pts[worst] = std::move(expanded);
                vals[worst] = f_expanded;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[second_worst]) {
            pts[worst] = std::move(reflected);
            vals[worst] = f_reflected;
            continue;
        }
        if (f_reflected < vals[worst]) {
            std::vector<double> outside = blend(-0.5);
            const double f_outside = f(outside);
            if (f_outside <= f_reflected) {
                pts[worst] = std::move(outside);
                vals[worst] = f_outside;
                continue;
            }
        } else {
            std::vector<double> inside = blend(0.5);
            const double f_inside = f(inside);
            if (f_inside < vals[worst]) {
                pts[worst] = std::move(inside);
                vals[worst] = f_inside;
                continue;
            }
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j)
                pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
            vals[i] = f(pts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (vals[i] < vals[best]) best = i;
    return {pts[best], vals[best], iter, converged};
}

nelder_mead_result minimize_multistart(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<std::vector<double>>& starts,
    const nelder_mead_options& options) {
    if (starts.empty())
        throw std::invalid_argument("minimize_multistart: no start points");
    nelder_mead_result best;
    best.f = std::numeric_limits<double>::infinity();
    bool any_converged = false;
    for (const auto& s : starts) {
        nelder_mead_result r = nelder_mead(f, s, options);
        any_converged = any_converged || r.converged;
        if (r.f < best.f) best = r;
    }
    best.converged = any_converged;
    return best;
}

}  // namespace mcmpb
