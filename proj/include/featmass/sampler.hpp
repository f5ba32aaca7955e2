#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "featmass/generators.hpp"
#include "featmass/model.hpp"

namespace featmass {

// What a replicate samples from: a fixed probability vector, or a fresh
// gamma-process draw per replicate.
using Family = std::variant<ProbabilityVector, GammaProcessSpec>;

struct RepRecord {
    std::int64_t replicate = 0;
    double tail_mass_bound = 0.0;  // of the vector this replicate sampled from
    StatisticsRecord stats;
};

// Deterministic, seed-addressable simulation results. Records are ordered by
// (replicate, n) and are byte-identical however many workers produced them.
struct ReplicateDataset {
    std::string config_digest;
    std::int64_t max_tracked_frequency = 10;
    std::vector<RepRecord> records;
};

// counts[j] ~ Binomial(n, p_j), independent across features.
SufficientStats sample_counts(const ProbabilityVector& pv, std::int64_t n, std::uint64_t seed);

// One growing sample observed at each n in `n_grid` (strictly increasing).
// Counts advance by exact Binomial(delta, p_j) increments, so the joint law
// at the grid points is exactly that of a single growing sample; K_n is
// non-decreasing and the missing-mass oracle non-increasing along the path.
std::vector<StatisticsRecord> sample_trajectory(const ProbabilityVector& pv,
                                                std::span<const std::int64_t> n_grid,
                                                std::uint64_t seed,
                                                std::int64_t max_tracked_frequency = 10);

// Distinct count, frequency counts r = 1..R, exact missing mass, estimator.
StatisticsRecord summarize(const ProbabilityVector& pv, const SufficientStats& stats,
                           std::int64_t max_tracked_frequency = 10);

// m independent replicates (trajectories over n_grid), per-replicate seed
// derived from master_seed via derive_seed. threads = 0 picks the hardware
// count; the merge is by replicate index, so the result does not depend on
// the number of workers.
ReplicateDataset run_replicates(const Family& family, std::span<const std::int64_t> n_grid,
                                std::int64_t replicates, std::uint64_t master_seed,
                                std::int64_t max_tracked_frequency = 10,
                                std::int64_t threads = 0);

}  // namespace featmass
