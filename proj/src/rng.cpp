#include "featmass/rng.hpp"

#include <cmath>

#include "featmass/special.hpp"

namespace featmass {

namespace {

// Bottom-up CDF walk. Requires p <= 1/2 and n*p modest so that (1-p)^n is far
// from underflow; first comparison resolves the overwhelmingly common k = 0.
std::int64_t binomial_inv_bottom(double u, std::int64_t n, double p) {
    const double zero_prob = pow_one_minus(p, static_cast<double>(n));
    if (u < zero_prob) return 0;
    const double odds = p / (1.0 - p);
    double pmf = zero_prob, cdf = zero_prob;
    std::int64_t k = 0;
    while (u >= cdf && k < n) {
        pmf *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
        cdf += pmf;
        ++k;
    }
    return k;
}

// Two-sided walk out from the mode in a fixed visiting order (mode, mode+1,
// mode-1, mode+2, ...). Any fixed order partitions [0,1) into intervals of
// exactly the pmf masses, so this is still exact single-uniform inversion;
// expected number of steps is O(sqrt(n p (1-p))).
std::int64_t binomial_inv_mode(double u, std::int64_t n, double p) {
    const auto mode = static_cast<std::int64_t>(
        std::floor(static_cast<double>(n + 1) * p));
    const double log_pm = log_choose(n, mode) +
                          static_cast<double>(mode) * std::log(p) +
                          static_cast<double>(n - mode) * std::log1p(-p);
    const double pm = std::exp(log_pm);
    double cdf = pm;
    if (u < cdf) return mode;
    const double odds = p / (1.0 - p);
    double hi_pmf = pm, lo_pmf = pm;
    std::int64_t hi = mode, lo = mode;
    while (lo > 0 || hi < n) {
        if (hi < n) {
            hi_pmf *= odds * static_cast<double>(n - hi) / static_cast<double>(hi + 1);
            ++hi;
            cdf += hi_pmf;
            if (u < cdf) return hi;
        }
        if (lo > 0) {
            lo_pmf *= static_cast<double>(lo) / (odds * static_cast<double>(n - lo + 1));
            --lo;
            cdf += lo_pmf;
            if (u < cdf) return lo;
        }
    }
    // u fell into the O(ulp) sliver above the rounded total mass
    return mode;
}

}  // namespace

std::int64_t binomial_inv(double u, std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    if (p > 0.5) return n - binomial_inv(u, n, 1.0 - p);
    return static_cast<double>(n) * p <= 30.0 ? binomial_inv_bottom(u, n, p)
                                              : binomial_inv_mode(u, n, p);
}

}  // namespace featmass
