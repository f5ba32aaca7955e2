#include "featmass/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "featmass/rng.hpp"
#include "featmass/special.hpp"

namespace featmass {

namespace {

double power_law_value(const RegVarSpec& s, double j) {
    double v = s.scale * std::pow(j, -1.0 / s.alpha);
    if (s.log_exponent != 0.0) v *= std::pow(1.0 + std::log(j), s.log_exponent);
    return v;
}

// Certified upper bound on sum_{j > J} p_j by the integral test. For
// log_exponent > 0 the log factor is dominated by (1 + log J)^beta (x/J)^d
// with d = beta / (1 + log J), which keeps the bound closed-form.
double power_law_tail_bound(const RegVarSpec& s, std::int64_t J) {
    const double Jd = static_cast<double>(J);
    const double inv_alpha = 1.0 / s.alpha;
    double exponent = inv_alpha;   // integrand decays like x^-exponent
    double log_factor = 1.0;
    if (s.log_exponent != 0.0) {
        log_factor = std::pow(1.0 + std::log(Jd), s.log_exponent);
        if (s.log_exponent > 0.0) exponent -= s.log_exponent / (1.0 + std::log(Jd));
    }
    if (exponent <= 1.0)
        throw std::domain_error("power_law: tail bound not certifiable for this spec");
    return s.scale * log_factor * std::pow(Jd, 1.0 - exponent) / (exponent - 1.0);
}

}  // namespace

ProbabilityVector power_law(const RegVarSpec& spec) {
    if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0))
        throw std::domain_error("power_law: alpha must lie in (0, 1)");
    if (!(spec.scale > 0.0))
        throw std::domain_error("power_law: scale must be > 0");
    if (!(spec.truncation_threshold > 0.0))
        throw std::domain_error("power_law: truncation_threshold must be > 0");

    // For log_exponent > 0 the sequence rises until roughly exp(alpha*beta - 1);
    // keep generating past the hump before applying the threshold stop.
    std::int64_t hump = 1;
    if (spec.log_exponent > 0.0)
        hump = static_cast<std::int64_t>(
                   std::ceil(std::exp(spec.alpha * spec.log_exponent - 1.0))) + 1;

    std::vector<double> values;
    std::int64_t j = 0;
    while (true) {
        ++j;
        const double v = power_law_value(spec, static_cast<double>(j));
        if (v < spec.truncation_threshold) {
            if (j > hump) { --j; break; }
            continue;  // below threshold before the hump: feature dropped, keep going
        }
        if (v > 1.0)
            throw std::domain_error("power_law: spec produces a probability above 1");
        values.push_back(v);
    }

    const double tail = power_law_tail_bound(spec, j);
    std::sort(values.begin(), values.end(), std::greater<double>());

    TailDescriptor d;
    d.family = TailDescriptor::Family::power_law;
    d.alpha = spec.alpha;
    d.scale = spec.scale;
    d.log_exponent = spec.log_exponent;
    return ProbabilityVector(std::move(values), tail, d);
}

ProbabilityVector geometric(double q, double truncation_threshold) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("geometric: q must lie in (0, 1)");
    if (!(truncation_threshold > 0.0))
        throw std::domain_error("geometric: truncation_threshold must be > 0");
    std::vector<double> values;
    double v = q;
    while (v >= truncation_threshold) {
        values.push_back(v);
        v *= q;
    }
    const double tail = v / (1.0 - q);  // v = q^(J+1)
    TailDescriptor d;
    d.family = TailDescriptor::Family::geometric;
    d.ratio = q;
    return ProbabilityVector(std::move(values), tail, d);
}

ProbabilityVector finite_uniform(std::int64_t count, double p) {
    if (count < 1) throw std::domain_error("finite_uniform: count must be >= 1");
    if (!(p > 0.0) || p > 1.0)
        throw std::domain_error("finite_uniform: p must lie in (0, 1]");
    TailDescriptor d;
    d.family = TailDescriptor::Family::finite_uniform;
    d.atom = p;
    return ProbabilityVector(std::vector<double>(static_cast<std::size_t>(count), p), 0.0, d);
}

namespace {

// Solve E1(rate * s) = target for s in [lo_init, hi_init] by bisection; the
// Levy tail is strictly decreasing so the bracket is guaranteed.
double invert_levy_tail(double target, double rate, double lo, double hi) {
    while (exp_integral_e1(rate * hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6)
            throw std::runtime_error("gamma_process_jumps: failed to bracket the Levy tail inverse");
    }
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (exp_integral_e1(rate * mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> gamma_process_jumps(const GammaProcessSpec& spec, std::uint64_t seed) {
    if (!(spec.jump_truncation > 0.0))
        throw std::domain_error("gamma_process: jump_truncation must be > 0");
    if (spec.tilt < 0)
        throw std::domain_error("gamma_process: tilt must be >= 0");
    const double rate = 1.0 + static_cast<double>(spec.tilt);
    const double budget = exp_integral_e1(rate * spec.jump_truncation);

    Xoshiro256pp rng(seed);
    std::vector<double> jumps;
    double arrival = 0.0;
    while (true) {
        arrival += rng.exponential();
        if (arrival >= budget) break;
        // jumps come out strictly decreasing, so the previous one brackets
        // the next from above
        const double hi = jumps.empty() ? std::max(2.0 * spec.jump_truncation, 1.0 / rate)
                                        : jumps.back();
        jumps.push_back(invert_levy_tail(arrival, rate, spec.jump_truncation, hi));
    }
    return jumps;
}

ProbabilityVector gamma_process_draw(const GammaProcessSpec& spec, std::uint64_t seed) {
    const std::vector<double> jumps = gamma_process_jumps(spec, seed);
    std::vector<double> values;
    values.reserve(jumps.size());
    for (double s : jumps) values.push_back(-std::expm1(-s));
    TailDescriptor d;
    d.family = TailDescriptor::Family::gamma_process;
    d.jump_truncation = spec.jump_truncation;
    d.tilt = spec.tilt;
    // discarded jumps contribute at most E int_0^eps e^{-s(1+tilt)} ds <= eps
    return ProbabilityVector(std::move(values), spec.jump_truncation, d);
}

}  // namespace featmass
