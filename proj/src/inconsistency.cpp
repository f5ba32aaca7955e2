#include "featmass/inconsistency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "featmass/asymptotics.hpp"
#include "featmass/rng.hpp"
#include "featmass/special.hpp"

namespace featmass {

double inconsistency_floor(double epsilon_bar) {
    if (!(epsilon_bar > 0.0) || !(epsilon_bar < 1.0 / 3.0))
        throw std::domain_error("inconsistency_floor: epsilon_bar must lie in (0, 1/3)");
    const double a = 1.0 + 3.0 * epsilon_bar;
    const double b = 1.0 - 3.0 * epsilon_bar;
    const double ystar = std::log(a / b) / (6.0 * epsilon_bar);
    return 1.0 + std::exp(-a * ystar) - std::exp(-b * ystar);
}

PosteriorMassCheck posterior_total_mass_check(std::int64_t n, std::int64_t draws,
                                              std::uint64_t seed, double jump_truncation,
                                              double ks_threshold) {
    if (n < 0) throw std::domain_error("posterior_total_mass_check: n must be >= 0");
    if (draws < 1) throw std::domain_error("posterior_total_mass_check: draws must be >= 1");

    PosteriorMassCheck out;
    out.n = n;
    out.draws = draws;
    out.ks_threshold = ks_threshold;

    GammaProcessSpec spec;
    spec.jump_truncation = jump_truncation;
    spec.tilt = n;

    std::vector<double> masses;
    masses.reserve(static_cast<std::size_t>(draws));
    KahanSum mean_acc;
    for (std::int64_t d = 0; d < draws; ++d) {
        const std::vector<double> jumps =
            gamma_process_jumps(spec, derive_seed(seed, static_cast<std::uint64_t>(d)));
        KahanSum raw, mapped;
        for (double s : jumps) {
            raw.add(s);
            mapped.add(-std::expm1(-s));
        }
        const double total = raw.value();
        const double mass = mapped.value();
        // per-draw sandwich 1 - S/2 <= M/S <= 1, from s - s^2/2 <= 1-e^-s <= s
        // term by term; allow rounding slack proportional to the sums
        if (total > 0.0) {
            const double slack = 1e-12 * (1.0 + total);
            if (mass > total + slack || mass < total - 0.5 * total * total - slack)
                ++out.sandwich_violations;
        }
        masses.push_back(total);
        mean_acc.add(total);
    }

    std::sort(masses.begin(), masses.end());
    const double rate = static_cast<double>(n) + 1.0;
    const double m = static_cast<double>(draws);
    double ks = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const double cdf = -std::expm1(-rate * masses[i]);
        ks = std::max(ks, std::fabs(cdf - static_cast<double>(i) / m));
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / m - cdf));
    }
    out.ks_distance = ks;
    out.ks_pass = ks < ks_threshold;

    out.mean_mass = mean_acc.value() / m;
    out.expected_mean = 1.0 / rate;
    KahanSum var_acc;
    for (double s : masses) var_acc.add((s - out.mean_mass) * (s - out.mean_mass));
    out.mean_stderr = draws > 1 ? std::sqrt(var_acc.value() / (m - 1.0) / m) : 0.0;
    return out;
}

InconsistencyReport inconsistency_experiment(std::span<const std::int64_t> n_grid,
                                             std::int64_t prior_draws, double epsilon,
                                             std::uint64_t master_seed, const Family& family,
                                             std::int64_t max_tracked_frequency,
                                             std::int64_t threads) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0 / 6.0))
        throw std::domain_error("inconsistency_experiment: epsilon must lie in (0, 1/6)");
    if (prior_draws < 1)
        throw std::invalid_argument("inconsistency_experiment: prior_draws must be >= 1");

    const ReplicateDataset ds = run_replicates(family, n_grid, prior_draws, master_seed,
                                               max_tracked_frequency, threads);
    const ConsistencyDiagnostic diag = consistency_diagnostic(ds, epsilon);

    InconsistencyReport rep;
    rep.epsilon = epsilon;
    rep.epsilon_bar = 2.0 * epsilon;
    rep.floor_constant = inconsistency_floor(rep.epsilon_bar);
    rep.n_grid = diag.n_grid;
    rep.used = diag.used;
    rep.degenerate = diag.degenerate;
    rep.mean = diag.mean;
    rep.median = diag.median;
    rep.sd = diag.sd;
    rep.fraction_outside.reserve(diag.fraction_within.size());
    for (double f : diag.fraction_within) rep.fraction_outside.push_back(1.0 - f);
    return rep;
}

}  // namespace featmass
