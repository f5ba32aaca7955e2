#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace testing_oracles {

// Exhaustive enumeration of all 2^(n*J) binary matrices, each weighted by its
// Bernoulli probability. Only viable for n*J <= ~22.
struct EnumeratedMoments {
    double expected_distinct = 0.0;
    std::vector<double> expected_freq;  // index r-1, r = 1..n
    double expected_missing = 0.0;      // retained features only
};

inline EnumeratedMoments enumerate_moments(const std::vector<double>& p, int n) {
    const int J = static_cast<int>(p.size());
    const int bits = n * J;
    EnumeratedMoments out;
    out.expected_freq.assign(static_cast<std::size_t>(n), 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        double prob = 1.0;
        std::vector<int> counts(static_cast<std::size_t>(J), 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < J; ++j) {
                const bool hit = (mask >> (i * J + j)) & 1u;
                prob *= hit ? p[static_cast<std::size_t>(j)]
                            : 1.0 - p[static_cast<std::size_t>(j)];
                if (hit) ++counts[static_cast<std::size_t>(j)];
            }
        }
        int distinct = 0;
        double missing = 0.0;
        std::vector<int> freq(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < J; ++j) {
            if (counts[static_cast<std::size_t>(j)] == 0) {
                missing += p[static_cast<std::size_t>(j)];
            } else {
                ++distinct;
                ++freq[static_cast<std::size_t>(counts[static_cast<std::size_t>(j)] - 1)];
            }
        }
        out.expected_distinct += prob * distinct;
        out.expected_missing += prob * missing;
        for (int r = 1; r <= n; ++r)
            out.expected_freq[static_cast<std::size_t>(r - 1)] +=
                prob * freq[static_cast<std::size_t>(r - 1)];
    }
    return out;
}

// Two-sided Kolmogorov-Smirnov distance of sorted samples against a CDF.
inline double ks_distance(std::vector<double> sorted,
                          const std::function<double(double)>& cdf) {
    const double m = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double c = cdf(sorted[i]);
        ks = std::max(ks, std::fabs(c - static_cast<double>(i) / m));
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / m - c));
    }
    return ks;
}

// Pearson chi-square statistic for observed counts against expected counts.
inline double chi_square_stat(const std::vector<double>& observed,
                              const std::vector<double>& expected) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

// Upper quantiles of the chi-square distribution (standard table values).
inline constexpr double kChi2_99_df8 = 20.0902;    // 0.99 quantile, 8 df
inline constexpr double kChi2_999_df2 = 13.8155;   // 0.999 quantile, 2 df
inline constexpr double kChi2_999_df3 = 16.2662;
inline constexpr double kChi2_999_df5 = 20.5150;
inline constexpr double kChi2_999_df8 = 26.1245;
inline constexpr double kChi2_999_df10 = 29.5883;

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
    double stderr_ = 0.0;
};

inline MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd out;
    const double m = static_cast<double>(xs.size());
    for (double x : xs) out.mean += x;
    out.mean /= m;
    for (double x : xs) out.sd += (x - out.mean) * (x - out.mean);
    out.sd = m > 1 ? std::sqrt(out.sd / (m - 1.0)) : 0.0;
    out.stderr_ = out.sd / std::sqrt(m);
    return out;
}

}  // namespace testing_oracles
