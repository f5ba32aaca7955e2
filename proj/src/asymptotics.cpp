#include "featmass/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "featmass/special.hpp"

namespace featmass {

double karlin_constant(double alpha, std::int64_t r) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("karlin_constant: alpha must lie in (0, 1)");
    if (r < 1) throw std::domain_error("karlin_constant: r must be >= 1");
    return alpha * std::exp(std::lgamma(static_cast<double>(r) - alpha) -
                            std::lgamma(static_cast<double>(r) + 1.0));
}

namespace {

// int_0^x u^(a-1) (1-u)^b du for b*x << 1, by the alternating series
// x^a sum_k (-1)^k C(b, k) x^k / (a + k); converges in a handful of terms.
double lower_beta_series(double x, double a, double b) {
    double coeff = 1.0;  // C(b, k) (-x)^k
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double term = coeff / (a + static_cast<double>(k));
        sum += term;
        coeff *= -(b - static_cast<double>(k)) * x / static_cast<double>(k + 1);
        if (std::fabs(coeff / (a + static_cast<double>(k + 1))) < 1e-17 * std::fabs(sum)) break;
    }
    return std::pow(x, a) * sum;
}

}  // namespace

double power_law_expected_freq_count(double alpha, double scale, std::int64_t n,
                                     std::int64_t r, double* err_bound) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("power_law_expected_freq_count: alpha must lie in (0, 1)");
    if (!(scale > 0.0) || scale > 1.0)
        throw std::domain_error("power_law_expected_freq_count: scale must lie in (0, 1]");
    if (n < 1) throw std::domain_error("power_law_expected_freq_count: n must be >= 1");
    if (r < 1 || r > n)
        throw std::domain_error("power_law_expected_freq_count: r must lie in [1, n]");

    // split point: keep the explicit sum where n*p is not yet tiny
    const double cutoff = std::min(1e-8, static_cast<double>(r) /
                                             (100.0 * static_cast<double>(n)));
    const auto head_len = static_cast<std::int64_t>(std::floor(std::pow(scale / cutoff, alpha)));

    KahanSum head;
    for (std::int64_t j = 1; j <= head_len; ++j) {
        const double p = scale * std::pow(static_cast<double>(j), -1.0 / alpha);
        head.add(binomial_term(n, r, p));
    }

    // tail sum over j > J is bracketed by the integrals from J+1 and from J:
    //   int_J^inf C(n,r) p(x)^r (1-p(x))^(n-r) dx
    //     = alpha scale^alpha C(n,r) int_0^{p_J} u^(r-alpha-1) (1-u)^(n-r) du
    const double a = static_cast<double>(r) - alpha;
    const double b = static_cast<double>(n - r);
    const double factor = alpha * std::pow(scale, alpha) * std::exp(log_choose(n, r));
    auto tail_from = [&](std::int64_t j0) {
        const double pj = scale * std::pow(static_cast<double>(j0), -1.0 / alpha);
        return factor * lower_beta_series(pj, a, b);
    };
    const double tail_hi = tail_from(head_len);       // integral from J: upper
    const double tail_lo = tail_from(head_len + 1);   // integral from J+1: lower
    if (err_bound) *err_bound = 0.5 * (tail_hi - tail_lo);
    return head.value() + 0.5 * (tail_hi + tail_lo);
}

double karlin_ratio(const RegVarSpec& spec, std::int64_t n, std::int64_t r) {
    if (spec.log_exponent != 0.0)
        throw std::invalid_argument(
            "karlin_ratio: log_exponent != 0 is unsupported (the slowly varying "
            "normalization l(n) has no closed form); check such specs only up to "
            "slow variation");
    const double ek = power_law_expected_freq_count(spec.alpha, spec.scale, n, r);
    const double norm = karlin_constant(spec.alpha, r) *
                        std::pow(static_cast<double>(n), spec.alpha) *
                        std::pow(spec.scale, spec.alpha);
    return ek / norm;
}

PoissonizationGap poissonization_gap(const ProbabilityVector& pv, std::int64_t n,
                                     std::int64_t r) {
    if (n <= 2) throw std::domain_error("poissonization_gap: n must be > 2");
    if (r < 1) throw std::domain_error("poissonization_gap: r must be >= 1");
    PoissonizationGap g;
    const double nd = static_cast<double>(n);
    g.aggregate_gap = std::fabs(poissonized_distinct(pv, n) - expected_distinct(pv, n));
    g.aggregate_budget = (2.0 / nd) * poissonized_freq_count(pv, n, 2);
    if (r <= n) {
        g.freq_gap = std::fabs(expected_freq_count(pv, n, r) - poissonized_freq_count(pv, n, r));
        g.freq_scale = std::max(poissonized_freq_count(pv, n, r),
                                poissonized_freq_count(pv, n, r + 2)) / nd;
        g.implied_constant = g.freq_scale > 0.0 ? g.freq_gap / g.freq_scale : 0.0;
    }
    return g;
}

namespace {

struct RatioBucket {
    std::vector<double> ratios;
    std::int64_t degenerate = 0;
};

std::map<std::int64_t, RatioBucket> collect_ratios(const ReplicateDataset& ds) {
    std::map<std::int64_t, RatioBucket> buckets;
    for (const RepRecord& r : ds.records) {
        RatioBucket& b = buckets[r.stats.n];
        // degenerate: every retained feature seen, the oracle is the bare
        // tail bound (or the vector was empty) -- no meaningful ratio
        if (r.stats.missing_mass_oracle <= r.tail_mass_bound) {
            ++b.degenerate;
            continue;
        }
        b.ratios.push_back(r.stats.estimate / r.stats.missing_mass_oracle);
    }
    return buckets;
}

double median_of(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ConsistencyDiagnostic consistency_diagnostic(const ReplicateDataset& ds, double epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("consistency_diagnostic: epsilon must be > 0");
    ConsistencyDiagnostic d;
    d.epsilon = epsilon;
    for (auto& [n, bucket] : collect_ratios(ds)) {
        d.n_grid.push_back(n);
        d.used.push_back(static_cast<std::int64_t>(bucket.ratios.size()));
        d.degenerate.push_back(bucket.degenerate);
        KahanSum sum, sumsq;
        std::int64_t within = 0;
        for (double rt : bucket.ratios) {
            sum.add(rt);
            if (std::fabs(rt - 1.0) <= epsilon) ++within;
        }
        const double m = static_cast<double>(bucket.ratios.size());
        const double mean = m > 0.0 ? sum.value() / m : 0.0;
        for (double rt : bucket.ratios) sumsq.add((rt - mean) * (rt - mean));
        d.mean.push_back(mean);
        d.sd.push_back(m > 1.0 ? std::sqrt(sumsq.value() / (m - 1.0)) : 0.0);
        d.median.push_back(median_of(bucket.ratios));
        d.fraction_within.push_back(m > 0.0 ? static_cast<double>(within) / m : 0.0);
    }
    return d;
}

}  // namespace featmass
