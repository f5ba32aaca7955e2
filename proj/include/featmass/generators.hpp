#pragma once

#include <cstdint>
#include <vector>

#include "featmass/model.hpp"

namespace featmass {

// Regularly varying family p_j = scale * j^(-1/alpha) * (1 + log j)^log_exponent,
// truncated at truncation_threshold. log_exponent = 0 is the pure power law.
struct RegVarSpec {
    double alpha = 0.5;
    double scale = 0.1;
    double log_exponent = 0.0;
    double truncation_threshold = 1e-10;

    bool operator==(const RegVarSpec&) const = default;
};

// Gamma-process prior (tilt = 0) or its posterior diffuse part (tilt = n):
// Poisson process of jumps with intensity e^{-s(1+tilt)}/s, jumps below
// jump_truncation discarded.
struct GammaProcessSpec {
    double jump_truncation = 1e-10;
    std::int64_t tilt = 0;

    bool operator==(const GammaProcessSpec&) const = default;
};

ProbabilityVector power_law(const RegVarSpec& spec);

// p_j = q^j, truncated; tail bound q^(J+1)/(1-q).
ProbabilityVector geometric(double q, double truncation_threshold);

// `count` features with identical probability p; no tail.
ProbabilityVector finite_uniform(std::int64_t count, double p);

// Jumps of the (tilted) gamma process with size >= jump_truncation, in
// decreasing order, via the inverse-Levy-tail construction: s_k solves
// rho(s_k) = Gamma_k where rho(x) = E1((1+tilt) x) and Gamma_k are the
// arrival times of a unit-rate Poisson process. Deterministic given seed.
std::vector<double> gamma_process_jumps(const GammaProcessSpec& spec, std::uint64_t seed);

// The induced feature probabilities p_k = 1 - e^{-s_k}; tail bound is
// jump_truncation (expected discarded mass is at most that).
ProbabilityVector gamma_process_draw(const GammaProcessSpec& spec, std::uint64_t seed);

}  // namespace featmass
