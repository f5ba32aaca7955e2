#pragma once

#include <cstdint>
#include <vector>

#include "featmass/generators.hpp"
#include "featmass/model.hpp"
#include "featmass/sampler.hpp"

namespace featmass {

// alpha * Gamma(r - alpha) / r!, the constant in the heavy-tail first-order
// asymptotic E[K_{n,r}] ~ const * n^alpha * l(n).
double karlin_constant(double alpha, std::int64_t r);

// E[K_{n,r}] for the untruncated pure power law p_j = scale * j^(-1/alpha):
// exact head sum plus an analytic tail integral bracket (no sampling, no
// truncation bias). If err_bound is non-null it receives a certified bound on
// the absolute error of the returned value.
double power_law_expected_freq_count(double alpha, double scale, std::int64_t n,
                                     std::int64_t r, double* err_bound = nullptr);

// E[K_{n,r}] / (karlin_constant(alpha, r) * n^alpha * scale^alpha) for a pure
// power law (log_exponent must be 0; the slowly varying normalization is not
// known in closed form otherwise and such specs are rejected). Approaches 1
// as n grows.
double karlin_ratio(const RegVarSpec& spec, std::int64_t n, std::int64_t r);

// Measured distance between the exact expectations and their Poissonized
// analogues, with the proven aggregate budget (constant 2) and the implied
// per-frequency constant (reported, not asserted: the analysis leaves it
// unspecified).
struct PoissonizationGap {
    double aggregate_gap = 0.0;      // |Phi_n - E[K_n]|
    double aggregate_budget = 0.0;   // (2/n) Phi_{n,2}
    double freq_gap = 0.0;           // |E[K_{n,r}] - Phi_{n,r}|
    double freq_scale = 0.0;         // max(Phi_{n,r}, Phi_{n,r+2}) / n
    double implied_constant = 0.0;   // freq_gap / freq_scale (0 if scale is 0)
};

PoissonizationGap poissonization_gap(const ProbabilityVector& pv, std::int64_t n,
                                     std::int64_t r);

// Per-n summary of the multiplicative ratio estimate / oracle over a dataset.
// Records whose retained-feature missing mass is exactly zero (the oracle
// equals the bare tail bound) have no meaningful ratio; they are counted in
// `degenerate`, never silently dropped.
struct ConsistencyDiagnostic {
    double epsilon = 0.0;
    std::vector<std::int64_t> n_grid;
    std::vector<std::int64_t> used;        // non-degenerate records per n
    std::vector<std::int64_t> degenerate;  // excluded records per n
    std::vector<double> mean;
    std::vector<double> median;
    std::vector<double> sd;
    std::vector<double> fraction_within;   // |ratio - 1| <= epsilon
};

ConsistencyDiagnostic consistency_diagnostic(const ReplicateDataset& ds, double epsilon);

}  // namespace featmass
