#pragma once

#include <cstdint>

namespace featmass {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Compensated (Kahan) accumulator. Expectation sums run over up to ~1e8
// positive terms and several contracts pin 1e-12 relative agreement between
// algebraically equal routes, which naive summation does not guarantee.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// (1 - p)^n without cancellation for small p and large n.
double pow_one_minus(double p, double n);

// log C(n, k) via lgamma.
double log_choose(std::int64_t n, std::int64_t k);

// C(n, r) p^r (1-p)^(n-r). The binomial coefficient is an exact double
// product for small r (tighter than lgamma), log-assembled otherwise.
double binomial_term(std::int64_t n, std::int64_t r, double p);

// lambda^r e^{-lambda} / r!
double poisson_term(double lambda, std::int64_t r);

// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
// Power series for x <= 1, modified Lentz continued fraction beyond.
double exp_integral_e1(double x);

}  // namespace featmass
