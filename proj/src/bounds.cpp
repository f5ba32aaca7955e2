#include "featmass/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "featmass/special.hpp"

namespace featmass {

double left_tail_variance(const ProbabilityVector& pv, std::int64_t n) {
    if (n < 1) throw std::domain_error("left_tail_variance: n must be >= 1");
    const double nd = static_cast<double>(n);
    return 2.0 * expected_freq_count(pv, n + 2, 2) / ((nd + 2.0) * (nd + 1.0));
}

double right_tail_variance(const ProbabilityVector& pv, std::int64_t n) {
    if (n <= 2) throw std::domain_error("right_tail_variance: n must be > 2");
    const double nd = static_cast<double>(n);
    return 2.0 * expected_distinct(pv, n) / (nd * nd - 2.0 * nd);
}

double missing_mass_left_tail_bound(const ProbabilityVector& pv, std::int64_t n, double x) {
    if (x < 0.0) throw std::domain_error("missing_mass_left_tail_bound: x must be >= 0");
    const double v = left_tail_variance(pv, n);
    if (v == 0.0) return x == 0.0 ? 1.0 : 0.0;
    return std::min(1.0, std::exp(-x * x / (2.0 * v)));
}

namespace {

double right_tail_form(const ProbabilityVector& pv, std::int64_t n, double x,
                       double radicand_factor) {
    if (x < 0.0) throw std::domain_error("missing_mass_right_tail_bound: x must be >= 0");
    const double v = right_tail_variance(pv, n);
    if (v == 0.0) return x == 0.0 ? 1.0 : 0.0;
    const double nd = static_cast<double>(n);
    const double u = x / (nd * v);
    const double exponent = v * nd * nd * (1.0 + u - std::sqrt(1.0 + radicand_factor * u));
    return std::min(1.0, std::exp(-exponent));
}

}  // namespace

double missing_mass_right_tail_bound(const ProbabilityVector& pv, std::int64_t n, double x) {
    return right_tail_form(pv, n, x, 1.0);
}

double missing_mass_right_tail_bound_chernoff(const ProbabilityVector& pv, std::int64_t n,
                                              double x) {
    return right_tail_form(pv, n, x, 2.0);
}

double freq_count_tail_bound(const ProbabilityVector& pv, std::int64_t n, std::int64_t r,
                             double x) {
    if (x < 0.0) throw std::domain_error("freq_count_tail_bound: x must be >= 0");
    const double e = expected_freq_count(pv, n, r);  // validates r <= n
    if (x == 0.0) return 1.0;
    const double denom = 2.0 * (e + x / 3.0);
    return std::min(1.0, 2.0 * std::exp(-x * x / denom));
}

std::size_t BoundCurve::violations() const {
    std::size_t k = 0;
    for (bool v : violation) k += v ? 1 : 0;
    return k;
}

std::size_t BoundReport::violations() const {
    return mm_left.violations() + mm_right.violations() + k1_two_sided.violations();
}

namespace {

void fill_empirical(BoundCurve& curve, const std::vector<double>& deviations,
                    double sign_or_abs /* -1 left, +1 right, 0 two-sided */) {
    const double m = static_cast<double>(deviations.size());
    curve.empirical.resize(curve.x.size());
    curve.stderr_.resize(curve.x.size());
    curve.violation.resize(curve.x.size());
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        const double x = curve.x[i];
        std::size_t hits = 0;
        for (double d : deviations) {
            if (sign_or_abs < 0.0 ? d <= -x : (sign_or_abs > 0.0 ? d >= x : std::fabs(d) >= x))
                ++hits;
        }
        const double freq = static_cast<double>(hits) / m;
        curve.empirical[i] = freq;
        curve.stderr_[i] = std::sqrt(freq * (1.0 - freq) / m);
        curve.violation[i] = freq - 4.0 * curve.stderr_[i] > curve.bound[i];
    }
}

}  // namespace

BoundReport empirical_tail_compare(const ReplicateDataset& ds, const ProbabilityVector& pv,
                                   std::int64_t n, std::span<const double> x_grid_mm,
                                   std::span<const double> x_grid_k1) {
    BoundReport rep;
    rep.n = n;
    std::vector<double> mm_dev, k1_dev;
    for (const RepRecord& r : ds.records) {
        if (r.stats.n != n) continue;
        if (r.stats.freq_counts.empty())
            throw std::invalid_argument("empirical_tail_compare: dataset does not track frequency 1");
        mm_dev.push_back(r.stats.missing_mass_oracle);
        k1_dev.push_back(static_cast<double>(r.stats.freq_counts[0]));
    }
    if (mm_dev.empty())
        throw std::invalid_argument("empirical_tail_compare: dataset holds no records at this n");
    rep.replicates = static_cast<std::int64_t>(mm_dev.size());
    rep.expected_m = expected_missing_mass(pv, n);
    rep.expected_k1 = expected_freq_count(pv, n, 1);
    rep.v_minus = left_tail_variance(pv, n);
    rep.v_plus = right_tail_variance(pv, n);
    for (double& d : mm_dev) d -= rep.expected_m;
    for (double& d : k1_dev) d -= rep.expected_k1;

    for (double x : x_grid_mm) {
        rep.mm_left.x.push_back(x);
        rep.mm_left.bound.push_back(missing_mass_left_tail_bound(pv, n, x));
        rep.mm_right_printed.x.push_back(x);
        rep.mm_right_printed.bound.push_back(missing_mass_right_tail_bound(pv, n, x));
        rep.mm_right.x.push_back(x);
        rep.mm_right.bound.push_back(missing_mass_right_tail_bound_chernoff(pv, n, x));
    }
    for (double x : x_grid_k1) {
        rep.k1_two_sided.x.push_back(x);
        rep.k1_two_sided.bound.push_back(freq_count_tail_bound(pv, n, 1, x));
    }
    fill_empirical(rep.mm_left, mm_dev, -1.0);
    fill_empirical(rep.mm_right_printed, mm_dev, +1.0);
    fill_empirical(rep.mm_right, mm_dev, +1.0);
    fill_empirical(rep.k1_two_sided, k1_dev, 0.0);
    return rep;
}

}  // namespace featmass
