#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "featmass/generators.hpp"
#include "featmass/sampler.hpp"

namespace featmass {

// The strictly positive floor f(y*) = 1 + e^{-(1+3e)y*} - e^{-(1-3e)y*} with
// y* = log((1+3e)/(1-3e)) / (6e), for e in (0, 1/3). This is the analytic
// lower bound on the probability that any point estimate misses a
// Gamma(1, n+1)-distributed mass by a 3e multiplicative margin.
double inconsistency_floor(double epsilon_bar);

// Distributional check of the posterior total-mass law: the total raw jump
// mass of a draw with tilt = n is Gamma(1, n+1), i.e. Exponential(n+1).
struct PosteriorMassCheck {
    std::int64_t n = 0;
    std::int64_t draws = 0;
    double ks_distance = 0.0;
    double ks_threshold = 0.0;
    bool ks_pass = false;
    double mean_mass = 0.0;
    double mean_stderr = 0.0;
    double expected_mean = 0.0;            // 1 / (n+1)
    std::int64_t sandwich_violations = 0;  // of 1 - S/2 <= M/S <= 1, per draw
};

PosteriorMassCheck posterior_total_mass_check(std::int64_t n, std::int64_t draws,
                                              std::uint64_t seed,
                                              double jump_truncation = 1e-10,
                                              double ks_threshold = 0.02);

// Per-n distribution of the estimator/oracle ratio over prior draws, and the
// fraction outside the [1-eps, 1+eps] band. Demonstrates distributionally
// that the band fraction does not approach 1 under the adversarial prior:
// the estimator is a fixed map (frequency-one count over n), failure is
// exhibited over prior draws rather than over all estimators.
struct InconsistencyReport {
    double epsilon = 0.0;       // band half-width used for the fractions
    double epsilon_bar = 0.0;   // 2 * epsilon, the knob the floor constant uses
    double floor_constant = 0.0;  // inconsistency_floor(epsilon_bar)
    std::vector<std::int64_t> n_grid;
    std::vector<std::int64_t> used;
    std::vector<std::int64_t> degenerate;
    std::vector<double> mean;
    std::vector<double> median;
    std::vector<double> sd;
    std::vector<double> fraction_outside;  // |ratio - 1| >= epsilon
};

// family defaults to fresh gamma-process prior draws per replicate; a fixed
// vector may be substituted as a control (its fraction decays instead).
InconsistencyReport inconsistency_experiment(std::span<const std::int64_t> n_grid,
                                             std::int64_t prior_draws, double epsilon,
                                             std::uint64_t master_seed,
                                             const Family& family = GammaProcessSpec{},
                                             std::int64_t max_tracked_frequency = 10,
                                             std::int64_t threads = 0);

}  // namespace featmass
