#include "mcmpb/queue.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mcmpb/numeric.hpp"

namespace mcmpb {

void queue_spec::validate() const {
    if (n < 1) throw std::invalid_argument("queue_spec: n must be >= 1");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("queue_spec: mu must be > 0");
    if (!(lambda_rate > 0.0) || !std::isfinite(lambda_rate))
        throw std::invalid_argument("queue_spec: lambda must be > 0");
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw std::invalid_argument("queue_spec: alpha, beta must be finite");
}

namespace {

double arrival_rate(const queue_spec& s, int x) {
    if (x >= s.n) return 0.0;
    return s.lambda_rate * std::pow(static_cast<double>(s.n - x), s.beta);
}

double service_rate(const queue_spec& s, int x) {
    if (x <= 0) return 0.0;
    return s.mu * std::pow(static_cast<double>(x), s.alpha);
}

}  // namespace

std::vector<double> stationary_exact(const queue_spec& spec) {
    spec.validate();
    const int n = spec.n;
    std::vector<double> lw(static_cast<std::size_t>(n) + 1, 0.0);
    compensated_sum prefix;
    double running_max = 0.0;
    for (int x = 0; x < n; ++x) {
        prefix.add(std::log(spec.lambda_rate) + spec.beta * std::log(static_cast<double>(n - x)) -
                   std::log(spec.mu) - spec.alpha * std::log(static_cast<double>(x + 1)));
        lw[static_cast<std::size_t>(x) + 1] = prefix.value();
        running_max = std::max(running_max, prefix.value());
    }
    compensated_sum norm;
    for (double& w : lw) {
        w -= running_max;
        norm.add(std::exp(w));
    }
    std::vector<double> pi(lw.size());
    for (std::size_t x = 0; x < lw.size(); ++x)
        pi[x] = std::exp(lw[x]) / norm.value();
    return pi;
}

simulation_summary simulate(const queue_spec& spec, double horizon,
                            std::uint64_t seed, int initial_state,
                            double burn_in_fraction) {
    spec.validate();
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate: horizon must be > 0");
    if (initial_state < 0 || initial_state > spec.n)
        throw std::invalid_argument("simulate: initial state outside {0, ..., n}");
    if (!(burn_in_fraction >= 0.0) || !(burn_in_fraction < 1.0))
        throw std::invalid_argument("simulate: burn-in fraction must be in [0, 1)");

    std::mt19937_64 rng(seed);
    simulation_summary out;
    out.horizon = horizon;
    out.burn_in = burn_in_fraction * horizon;
    out.occupancy.assign(static_cast<std::size_t>(spec.n) + 1, 0.0);

    double t = 0.0;
    int x = initial_state;
    std::vector<compensated_sum> time_in(static_cast<std::size_t>(spec.n) + 1);
    while (t < horizon) {
        const double birth = arrival_rate(spec, x);
        const double death = service_rate(spec, x);
        const double total = birth + death;  // > 0 for n >= 1
        const double dt = -std::log(uniform_from_bits(rng())) / total;
        const double seg_begin = std::max(t, out.burn_in);
        const double seg_end = std::min(t + dt, horizon);
        if (seg_end > seg_begin)
            time_in[static_cast<std::size_t>(x)].add(seg_end - seg_begin);
        t += dt;
        if (t >= horizon) break;
        ++out.events;
        x += (uniform_from_bits(rng()) < birth / total) ? 1 : -1;
    }

    const double window = horizon - out.burn_in;
    for (std::size_t i = 0; i < out.occupancy.size(); ++i)
        out.occupancy[i] = time_in[i].value() / window;
    return out;
}

double transient_residual(const queue_spec& spec, const std::vector<double>& pmf) {
    spec.validate();
    if (pmf.size() != static_cast<std::size_t>(spec.n) + 1)
        throw std::invalid_argument("transient_residual: pmf must cover {0, ..., n}");
    double worst = 0.0;
    for (int x = 0; x <= spec.n; ++x) {
        double rhs = -(service_rate(spec, x) + arrival_rate(spec, x)) *
                     pmf[static_cast<std::size_t>(x)];
        if (x < spec.n)
            rhs += service_rate(spec, x + 1) * pmf[static_cast<std::size_t>(x) + 1];
        if (x > 0)
            rhs += arrival_rate(spec, x - 1) * pmf[static_cast<std::size_t>(x) - 1];
        worst = std::max(worst, std::fabs(rhs));
    }
    return worst;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("total_variation: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return 0.5 * s;
}

}  // namespace mcmpb
