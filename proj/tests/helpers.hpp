#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mcmpb/data.hpp"
#include "mcmpb/distribution.hpp"

namespace mcmpb::testing {

inline double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double binomial_pmf(int n, double p, int x) {
    if (p <= 0.0) return x == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return x == n ? 1.0 : 0.0;
    return std::exp(log_choose(n, x) + x * std::log(p) + (n - x) * std::log1p(-p));
}

inline double poisson_pmf(double lambda, int x) {
    return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
}

// Frequency table from a dense count vector starting at value `first`.
inline frequency_data make_data(const std::vector<long long>& freqs, int first = 0,
                                bool truncated = false) {
    frequency_data d;
    d.truncated_at_zero = truncated;
    for (std::size_t i = 0; i < freqs.size(); ++i)
        d.rows.push_back({first + static_cast<int>(i), freqs[i]});
    return d;
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

}  // namespace mcmpb::testing
