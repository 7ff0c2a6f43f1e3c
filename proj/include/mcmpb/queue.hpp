// Finite-capacity single-server birth-death chain whose stationary law is
// the bounded two-exponent count distribution.  State x in {0, ..., n};
// arrivals occur at rate lambda (n-x)^beta for x < n and departures at rate
// mu x^alpha for x > 0.  Note these are transition RATES: the balance
// equations require that reading, and it is the one under which the
// stationary law has theta = lambda/mu.  Boundary rates are structurally
// zero, so 0^alpha / 0^beta are never evaluated.
#pragma once

#include <cstdint>
#include <vector>

namespace mcmpb {

struct queue_spec {
    int n = 1;            // capacity
    double alpha = 1.0;   // service exponent
    double beta = 1.0;    // arrival exponent
    double mu = 1.0;      // service scale, > 0
    double lambda_rate = 1.0;  // arrival scale, > 0

    void validate() const;  // throws std::invalid_argument
};

// Solves the detailed-balance ladder
//   pi(x+1)/pi(x) = lambda (n-x)^beta / (mu (x+1)^alpha)
// in the log domain.  Equals the bounded law with psi = log(lambda/mu).
std::vector<double> stationary_exact(const queue_spec& spec);

struct simulation_summary {
    std::vector<double> occupancy;  // time-weighted state fractions after burn-in
    std::uint64_t events = 0;       // transitions over the whole horizon
    double horizon = 0.0;
    double burn_in = 0.0;
};

// Continuous-time next-event simulation from `initial_state`.  The first
// burn_in_fraction of the horizon is excluded from occupancy accounting.
// Deterministic given the seed; consumes two generator words per event.
simulation_summary simulate(const queue_spec& spec, double horizon,
                            std::uint64_t seed, int initial_state = 0,
                            double burn_in_fraction = 0.1);

// Maximum absolute component of the generator applied to `pmf`, i.e. the
// right-hand side of the transient balance equation
//   dP(x,t)/dt = mu (x+1)^alpha P(x+1) - {mu x^alpha + lambda (n-x)^beta} P(x)
//                + lambda (n-x+1)^beta P(x-1)
// with the boundary terms dropped.  Zero exactly when pmf is stationary.
double transient_residual(const queue_spec& spec, const std::vector<double>& pmf);

// Total-variation distance between two probability vectors of equal length.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mcmpb
