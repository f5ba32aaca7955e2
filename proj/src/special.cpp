#include "featmass/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace featmass {

double pow_one_minus(double p, double n) {
    if (p >= 1.0) return n == 0.0 ? 1.0 : 0.0;
    if (n == 0.0) return 1.0;
    return std::exp(n * std::log1p(-p));
}

double log_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) throw std::domain_error("log_choose: k must lie in [0, n]");
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_term(std::int64_t n, std::int64_t r, double p) {
    if (r < 0 || r > n) throw std::domain_error("binomial_term: r must lie in [0, n]");
    if (p <= 0.0) return r == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return r == n ? 1.0 : 0.0;
    if (r == 0) return pow_one_minus(p, static_cast<double>(n));
    const double log_tail =
        n == r ? 0.0 : static_cast<double>(n - r) * std::log1p(-p);
    if (r <= 32) {
        // exact-in-double coefficient: one rounding per factor, no lgamma noise
        double coeff = 1.0;
        for (std::int64_t i = 1; i <= r; ++i)
            coeff *= static_cast<double>(n - r + i) / static_cast<double>(i);
        return coeff * std::exp(static_cast<double>(r) * std::log(p) + log_tail);
    }
    return std::exp(log_choose(n, r) + static_cast<double>(r) * std::log(p) + log_tail);
}

double poisson_term(double lambda, std::int64_t r) {
    if (r < 0) throw std::domain_error("poisson_term: r must be >= 0");
    if (lambda <= 0.0) return r == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(r) * std::log(lambda) - lambda -
                    std::lgamma(static_cast<double>(r) + 1.0));
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: x must be > 0");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (x <= 1.0) {
        // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double sum = 0.0, term = x;
        for (int k = 1; k < 64; ++k) {
            sum += term;
            term *= -x * static_cast<double>(k) /
                    (static_cast<double>(k + 1) * static_cast<double>(k + 1));
            if (std::fabs(term) < eps * (std::fabs(sum) + 1.0)) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // modified Lentz continued fraction, e^{-x} * 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 200; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h * std::exp(-x);
}

}  // namespace featmass
