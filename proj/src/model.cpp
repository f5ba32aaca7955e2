#include "featmass/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "featmass/special.hpp"

namespace featmass {

ProbabilityVector::ProbabilityVector(std::vector<double> values, double tail_mass_bound,
                                     TailDescriptor descriptor)
    : values_(std::move(values)), tail_mass_bound_(tail_mass_bound),
      descriptor_(descriptor) {
    validate();
    KahanSum acc;
    for (double v : values_) acc.add(v);
    retained_mass_ = acc.value();
}

void ProbabilityVector::validate() const {
    if (!(tail_mass_bound_ >= 0.0) || !std::isfinite(tail_mass_bound_))
        throw std::invalid_argument("ProbabilityVector: tail_mass_bound must be finite and >= 0");
    double prev = 1.0;
    double plain_sum = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) {
        const double v = values_[j];
        if (!(v > 0.0) || v > 1.0)
            throw std::invalid_argument("ProbabilityVector: values must lie in (0, 1] (index " +
                                        std::to_string(j) + ")");
        if (v > prev)
            throw std::invalid_argument("ProbabilityVector: values must be non-increasing (index " +
                                        std::to_string(j) + ")");
        prev = v;
        plain_sum += v;
    }
    if (!std::isfinite(plain_sum + tail_mass_bound_))
        throw std::invalid_argument("ProbabilityVector: total mass is not finite");
    if (descriptor_.family == TailDescriptor::Family::power_law &&
        descriptor_.log_exponent == 0.0 && !values_.empty()) {
        // pure power law: v_j * j^(1/alpha) is constant
        const double ref = values_[0];
        for (std::size_t j = 1; j < values_.size(); ++j) {
            const double scaled =
                values_[j] * std::pow(static_cast<double>(j + 1), 1.0 / descriptor_.alpha);
            if (std::fabs(scaled / ref - 1.0) > 1e-9)
                throw std::invalid_argument(
                    "ProbabilityVector: power-law tag but values are not a pure power law "
                    "(index " + std::to_string(j) + ")");
        }
    }
}

double missing_mass(const ProbabilityVector& pv, const SufficientStats& stats) {
    if (stats.counts.size() != pv.size())
        throw std::invalid_argument("missing_mass: counts length does not match the probability vector");
    KahanSum acc;
    const auto& values = pv.values();
    for (std::size_t j = 0; j < values.size(); ++j)
        if (stats.counts[j] == 0) acc.add(values[j]);
    return acc.value() + pv.tail_mass_bound();
}

double expected_freq_count(const ProbabilityVector& pv, std::int64_t n, std::int64_t r) {
    if (n < 1) throw std::domain_error("expected_freq_count: n must be >= 1");
    if (r < 0 || r > n) throw std::domain_error("expected_freq_count: r must lie in [0, n]");
    KahanSum acc;
    for (double p : pv.values()) acc.add(binomial_term(n, r, p));
    return acc.value();
}

double expected_distinct(const ProbabilityVector& pv, std::int64_t n) {
    if (n < 1) throw std::domain_error("expected_distinct: n must be >= 1");
    KahanSum acc;
    for (double p : pv.values())
        acc.add(-std::expm1(static_cast<double>(n) * std::log1p(-p)));
    return acc.value();
}

double expected_missing_mass(const ProbabilityVector& pv, std::int64_t n) {
    if (n < 1) throw std::domain_error("expected_missing_mass: n must be >= 1");
    KahanSum acc;
    for (double p : pv.values()) acc.add(p * pow_one_minus(p, static_cast<double>(n)));
    return acc.value() + pv.tail_mass_bound();
}

double poissonized_freq_count(const ProbabilityVector& pv, std::int64_t n, std::int64_t r) {
    if (n < 1) throw std::domain_error("poissonized_freq_count: n must be >= 1");
    if (r < 1) throw std::domain_error("poissonized_freq_count: r must be >= 1");
    KahanSum acc;
    for (double p : pv.values()) acc.add(poisson_term(static_cast<double>(n) * p, r));
    return acc.value();
}

double poissonized_distinct(const ProbabilityVector& pv, std::int64_t n) {
    if (n < 1) throw std::domain_error("poissonized_distinct: n must be >= 1");
    KahanSum acc;
    for (double p : pv.values()) acc.add(-std::expm1(-static_cast<double>(n) * p));
    return acc.value();
}

}  // namespace featmass
