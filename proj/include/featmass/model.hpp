#pragma once

#include <cstdint>
#include <vector>

namespace featmass {

// Records which generator produced a ProbabilityVector, so that downstream
// checks (pure power-law constancy, Karlin normalization) know what they may
// assume about the tail.
struct TailDescriptor {
    enum class Family { none, power_law, geometric, finite_uniform, gamma_process };

    Family family = Family::none;
    double alpha = 0.0;          // power_law: regular-variation index
    double scale = 0.0;          // power_law: leading constant
    double log_exponent = 0.0;   // power_law: exponent of the (1 + log j) factor
    double ratio = 0.0;          // geometric: q
    double atom = 0.0;           // finite_uniform: the common probability
    double jump_truncation = 0.0;  // gamma_process: epsilon
    std::int64_t tilt = 0;         // gamma_process: exponential tilt
};

// A truncated, non-increasing sequence of feature probabilities in (0, 1]
// together with a certified upper bound on the discarded tail mass.
// Immutable after construction; safe to share across threads.
class ProbabilityVector {
public:
    ProbabilityVector(std::vector<double> values, double tail_mass_bound,
                      TailDescriptor descriptor = {});

    const std::vector<double>& values() const { return values_; }
    double tail_mass_bound() const { return tail_mass_bound_; }
    const TailDescriptor& descriptor() const { return descriptor_; }
    std::size_t size() const { return values_.size(); }

    // Compensated sum of the retained probabilities (tail bound excluded).
    double retained_mass() const { return retained_mass_; }

private:
    void validate() const;

    std::vector<double> values_;
    double tail_mass_bound_ = 0.0;
    TailDescriptor descriptor_;
    double retained_mass_ = 0.0;
};

// Per-feature occurrence counts after n observations. Individual observation
// rows are never materialized; counts are sufficient for every statistic here.
struct SufficientStats {
    std::int64_t n = 0;
    std::vector<std::uint32_t> counts;
};

// One replicate's summary at sample size n. freq_counts[r-1] holds the number
// of features seen exactly r times, r = 1..R.
struct StatisticsRecord {
    std::int64_t n = 0;
    std::int64_t distinct = 0;                 // features seen at least once
    std::vector<std::int64_t> freq_counts;
    double missing_mass_oracle = 0.0;          // exact, from the known probabilities
    double estimate = 0.0;                     // freq_counts[0] / n
};

// Exact missing mass of `stats` under `pv`: the total probability of unseen
// retained features plus the tail bound (truncated features are never
// observed, so their mass is always missing; the bound is a conservative
// stand-in reported separately by the datasets).
double missing_mass(const ProbabilityVector& pv, const SufficientStats& stats);

// E[number of features seen exactly r times in n observations], 0 <= r <= n.
double expected_freq_count(const ProbabilityVector& pv, std::int64_t n, std::int64_t r);

// E[number of distinct features seen in n observations].
double expected_distinct(const ProbabilityVector& pv, std::int64_t n);

// E[missing mass after n observations], tail bound included.
double expected_missing_mass(const ProbabilityVector& pv, std::int64_t n);

// Poissonized analogue of expected_freq_count: sum_j (n p_j)^r e^{-n p_j} / r!
double poissonized_freq_count(const ProbabilityVector& pv, std::int64_t n, std::int64_t r);

// Poissonized analogue of expected_distinct: sum_j (1 - e^{-n p_j}).
double poissonized_distinct(const ProbabilityVector& pv, std::int64_t n);

}  // namespace featmass
