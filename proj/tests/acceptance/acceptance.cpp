// Acceptance suite: one self-contained check per numbered criterion, each
// printing a [PASS]/[FAIL] line with its measured numbers and wall time.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "featmass/asymptotics.hpp"
#include "featmass/bounds.hpp"
#include "featmass/config.hpp"
#include "featmass/inconsistency.hpp"
#include "featmass/model.hpp"
#include "featmass/rng.hpp"
#include "featmass/runner.hpp"
#include "featmass/sampler.hpp"
#include "featmass/special.hpp"
#include "helpers/oracles.hpp"

using namespace featmass;
namespace fs = std::filesystem;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

ProbabilityVector random_case(Xoshiro256pp& rng) {
    switch (rng() % 4) {
        case 0: {
            RegVarSpec s;
            s.alpha = 0.2 + 0.6 * rng.uniform();
            s.scale = 0.05 + 0.9 * rng.uniform();
            // threshold chosen so the retained length stays near 1e4
            s.truncation_threshold = s.scale * std::pow(1e4, -1.0 / s.alpha);
            return power_law(s);
        }
        case 1:
            return geometric(0.05 + 0.9 * rng.uniform(), 1e-9);
        case 2:
            return finite_uniform(1 + static_cast<std::int64_t>(rng() % 100),
                                  0.01 + 0.99 * rng.uniform());
        default: {
            std::vector<double> v;
            double cur = rng.uniform();
            const std::size_t len = 1 + rng() % 3000;
            for (std::size_t j = 0; j < len && cur > 1e-280; ++j) {
                v.push_back(cur);
                cur *= 0.2 + 0.8 * rng.uniform();
            }
            return ProbabilityVector(std::move(v), 0.0);
        }
    }
}

bool relative_close(double a, double b, double tol) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 || std::fabs(a - b) <= tol * scale;
}

// ---------------------------------------------------------------- criterion 1
bool criterion_1(std::ostream& out) {
    Timer t;
    Xoshiro256pp rng(0xFEA7001);
    int ok = 0;
    double worst = 0.0;
    const int cases = 200;
    for (int i = 0; i < cases; ++i) {
        const auto pv = random_case(rng);
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1000);
        const double m_lhs = expected_missing_mass(pv, n) - pv.tail_mass_bound();
        const double m_rhs = expected_freq_count(pv, n + 1, 1) / static_cast<double>(n + 1);
        KahanSum direct;
        for (double p : pv.values())
            direct.add(p * p * pow_one_minus(p, static_cast<double>(n)));
        const double v_lhs = left_tail_variance(pv, n);
        const double v_rhs = direct.value();
        const bool pass = relative_close(m_lhs, m_rhs, 1e-12) &&
                          relative_close(v_lhs, v_rhs, 1e-12);
        for (auto [a, b] : {std::pair{m_lhs, m_rhs}, std::pair{v_lhs, v_rhs}}) {
            const double scale = std::max(std::fabs(a), std::fabs(b));
            if (scale > 0.0) worst = std::max(worst, std::fabs(a - b) / scale);
        }
        if (pass) ++ok;
    }
    const double sec = t.seconds();
    const bool pass = ok == cases && sec < 10.0;
    out << (pass ? "[PASS]" : "[FAIL]") << " criterion 1: exact identities  "
        << ok << "/" << cases << " cases within 1e-12 (worst rel err " << worst
        << "), " << sec << " s (budget 10 s)\n";
    return pass;
}

// ---------------------------------------------------------------- criterion 2
bool criterion_2(std::ostream& out) {
    Timer t;
    bool exact_ok = true;
    double worst = 0.0;
    const std::vector<std::vector<double>> vecs = {
        {0.5}, {0.9, 0.3}, {0.7, 0.4, 0.1}, {0.3, 0.2, 0.05}};
    for (const auto& raw : vecs) {
        for (int n = 1; n <= 4; ++n) {
            const auto oracle = testing_oracles::enumerate_moments(raw, n);
            const ProbabilityVector pv(std::vector<double>(raw), 0.0);
            const double em = expected_missing_mass(pv, n);
            exact_ok &= std::fabs(em - oracle.expected_missing) <= 1e-10;
            worst = std::max(worst, std::fabs(em - oracle.expected_missing));
            for (int r = 1; r <= n; ++r) {
                const double ek = expected_freq_count(pv, n, r);
                const double ref = oracle.expected_freq[static_cast<std::size_t>(r - 1)];
                exact_ok &= std::fabs(ek - ref) <= 1e-10;
                worst = std::max(worst, std::fabs(ek - ref));
            }
        }
    }

    // empirical means over 1e5 replicates vs the enumeration, 4 standard errors
    const std::vector<double> raw = {0.7, 0.4, 0.1};
    const int n = 4;
    const auto oracle = testing_oracles::enumerate_moments(raw, n);
    const ProbabilityVector pv(std::vector<double>(raw), 0.0);
    const std::vector<std::int64_t> grid = {n};
    const auto ds = run_replicates(Family{pv}, grid, 100000, 0xFEA7002, 4, 0);
    std::vector<std::vector<double>> freq(4);
    std::vector<double> missing;
    for (const auto& rec : ds.records) {
        for (int r = 1; r <= 4; ++r)
            freq[static_cast<std::size_t>(r - 1)].push_back(
                static_cast<double>(rec.stats.freq_counts[static_cast<std::size_t>(r - 1)]));
        missing.push_back(rec.stats.missing_mass_oracle);
    }
    bool mc_ok = true;
    for (int r = 1; r <= 4; ++r) {
        const auto s = testing_oracles::mean_sd(freq[static_cast<std::size_t>(r - 1)]);
        mc_ok &= std::fabs(s.mean - oracle.expected_freq[static_cast<std::size_t>(r - 1)]) <=
                 4.0 * s.stderr_;
    }
    const auto sm = testing_oracles::mean_sd(missing);
    mc_ok &= std::fabs(sm.mean - oracle.expected_missing) <= 4.0 * sm.stderr_;

    const double sec = t.seconds();
    const bool pass = exact_ok && mc_ok && sec < 60.0;
    out << (pass ? "[PASS]" : "[FAIL]") << " criterion 2: brute-force oracle  exact worst abs err "
        << worst << " (tol 1e-10), empirical means " << (mc_ok ? "within" : "OUTSIDE")
        << " 4 SE at m=1e5, " << sec << " s (budget 60 s)\n";
    return pass;
}

// ---------------------------------------------------------------- criterion 3
bool criterion_3(std::ostream& out) {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (std::int64_t r : {1, 2}) {
            RegVarSpec s;
            s.alpha = alpha;
            s.scale = 0.1;
            const double ratio = karlin_ratio(s, 1000000, r);
            const bool ok = std::fabs(ratio - 1.0) <= 0.05;
            pass &= ok;
            detail << " a=" << alpha << ",r=" << r << ":" << ratio;
        }
    }
    const double sec = t.seconds();
    pass &= sec < 120.0;
    out << (pass ? "[PASS]" : "[FAIL]")
        << " criterion 3: first-order frequency asymptotics at n=1e6, ratios within 5% of 1: "
        << detail.str() << ", " << sec << " s (budget 120 s)\n";
    return pass;
}

// ---------------------------------------------------------------- criterion 4
bool criterion_4(std::ostream& out) {
    Timer t;
    std::size_t proven_violations = 0;
    std::size_t printed_violations = 0;
    std::ostringstream detail;

    RegVarSpec plaw;
    plaw.alpha = 0.5;
    plaw.scale = 0.1;
    plaw.truncation_threshold = 1e-10;
    const std::vector<std::pair<std::string, ProbabilityVector>> families = {
        {"power_law(0.5)", power_law(plaw)},
        {"geometric(0.5)", geometric(0.5, 1e-9)},
        {"finite_uniform(100,0.01)", finite_uniform(100, 0.01)},
    };
    const std::vector<std::int64_t> grid = {10, 100};
    std::uint64_t seed = 0xFEA7004;
    for (const auto& [name, pv] : families) {
        const auto ds = run_replicates(Family{pv}, grid, 100000, seed++, 10, 0);
        for (std::int64_t n : grid) {
            std::vector<double> x_mm, x_k1;
            const double s_mm = std::sqrt(left_tail_variance(pv, n));
            const double s_k1 = std::sqrt(expected_freq_count(pv, n, 1));
            for (double m = 0.0; m <= 5.01; m += 0.5) {
                x_mm.push_back(m * s_mm);
                x_k1.push_back(m * s_k1);
            }
            const auto rep = empirical_tail_compare(ds, pv, n, x_mm, x_k1);
            proven_violations += rep.violations();
            printed_violations += rep.violations_printed();
            if (rep.violations() > 0 || rep.violations_printed() > 0)
                detail << "  " << name << " n=" << n << ": proven=" << rep.violations()
                       << " displayed-form=" << rep.violations_printed() << "\n";
        }
    }
    const double sec = t.seconds();
    const bool pass = proven_violations == 0 && sec < 600.0;
    out << (pass ? "[PASS]" : "[FAIL]")
        << " criterion 4: concentration validity (3 families x n in {10,100} x m=1e5)  "
        << proven_violations << " violations of the proven bounds at 4 SE ("
        << printed_violations
        << " of the as-displayed right-tail variant, reported, not gating -- see the bounds "
           "report columns), "
        << sec << " s (budget 600 s)\n";
    if (!detail.str().empty()) out << detail.str();
    return pass;
}

// ---------------------------------------------------------------- criterion 5
bool criterion_5(std::ostream& out) {
    Timer t;
    RegVarSpec s;
    s.alpha = 0.5;
    s.scale = 0.1;
    s.truncation_threshold = 1e-12;
    const std::vector<std::int64_t> grid = {100, 1000, 10000, 100000};
    const auto ds = run_replicates(Family{power_law(s)}, grid, 100, 0xFEA7005, 10, 0);
    const auto d = consistency_diagnostic(ds, 0.1);
    bool monotone = true;
    for (std::size_t i = 1; i < d.fraction_within.size(); ++i)
        monotone &= d.fraction_within[i] >= d.fraction_within[i - 1];
    const double final_fraction = d.fraction_within.back();
    const double sec = t.seconds();
    const bool pass = monotone && final_fraction >= 0.95 && sec < 600.0;
    out << (pass ? "[PASS]" : "[FAIL]")
        << " criterion 5: multiplicative consistency at desk scale  fractions in the 0.1 band:";
    for (std::size_t i = 0; i < d.n_grid.size(); ++i)
        out << " n=" << d.n_grid[i] << ":" << d.fraction_within[i];
    out << (monotone ? "  (non-decreasing ok" : "  (NOT non-decreasing")
        << ", need >= 0.95 at n=1e5), " << sec << " s (budget 600 s)\n";
    return pass;
}

// ---------------------------------------------------------------- criterion 6
bool criterion_6(std::ostream& out) {
    Timer t;
    const std::vector<std::int64_t> grid = {100, 1000, 10000, 100000};
    GammaProcessSpec gspec;
    gspec.jump_truncation = 1e-10;
    gspec.tilt = 0;
    const auto adversarial =
        inconsistency_experiment(grid, 500, 0.1, 0xFEA7006, Family{gspec}, 10, 0);

    RegVarSpec s;
    s.alpha = 0.5;
    s.scale = 0.1;
    s.truncation_threshold = 1e-12;
    const auto control =
        inconsistency_experiment(grid, 500, 0.1, 0xFEA7007, Family{power_law(s)}, 10, 0);

    bool floor_ok = true;
    for (double f : adversarial.fraction_outside) floor_ok &= f >= 0.05;
    const double gamma_final = adversarial.fraction_outside.back();
    const double control_final = control.fraction_outside.back();
    const double separation = control_final > 0.0 ? gamma_final / control_final
                                                  : std::numeric_limits<double>::infinity();
    const double sec = t.seconds();
    const bool pass = floor_ok && separation >= 5.0;
    out << (pass ? "[PASS]" : "[FAIL]")
        << " criterion 6: adversarial-prior phenomenon  outside-fractions:";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << " n=" << grid[i] << ":" << adversarial.fraction_outside[i];
    out << "  (floor 0.05 " << (floor_ok ? "ok" : "VIOLATED") << "), control at n=1e5: "
        << control_final << ", separation " << separation << "x (need >= 5x), " << sec
        << " s\n";
    return pass;
}

// ---------------------------------------------------------------- criterion 7
bool criterion_7(std::ostream& out) {
    Timer t;
    bool ks_ok = true;
    std::ostringstream detail;
    std::uint64_t seed = 0xFEA7008;
    for (std::int64_t n : {0, 10, 100}) {
        const auto chk = posterior_total_mass_check(n, 10000, seed++, 1e-10, 0.02);
        ks_ok &= chk.ks_pass && chk.sandwich_violations == 0;
        detail << " n=" << n << ":KS=" << chk.ks_distance;
    }
    // closed-form floor against the grid-minimization oracle at eps_bar = 0.1
    const double closed = inconsistency_floor(0.1);
    auto f = [](double y) {
        return 1.0 + std::exp(-1.3 * y) - std::exp(-0.7 * y);
    };
    double best = 1.0;
    for (double y = 1e-4; y <= 50.0; y += 1e-4) best = std::min(best, f(y));
    double lo = 0.9, hi = 1.2;  // refine around the minimizer
    for (int i = 0; i < 200; ++i) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2))
            hi = m2;
        else
            lo = m1;
    }
    best = std::min(best, f(0.5 * (lo + hi)));
    const bool floor_ok = std::fabs(closed - best) <= 1e-9 &&
                          std::fabs(closed - 0.775832) <= 1e-6;
    const double sec = t.seconds();
    const bool pass = ks_ok && floor_ok;
    out << (pass ? "[PASS]" : "[FAIL]")
        << " criterion 7: posterior total-mass law + floor constant " << detail.str()
        << " (all < 0.02, sandwich exact), floor(0.1) = " << closed
        << " vs oracle " << best << ", " << sec << " s\n";
    return pass;
}

// ---------------------------------------------------------------- criterion 8
bool criterion_8(std::ostream& out) {
    Timer t;
    std::string mismatch;
    const fs::path base = fs::temp_directory_path() / "featmass_acceptance_det";
    fs::remove_all(base);

    auto files_equal = [&](const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::ifstream fa(a[i], std::ios::binary), fb(b[i], std::ios::binary);
            std::stringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            if (sa.str() != sb.str()) {
                mismatch = a[i];
                return false;
            }
        }
        return true;
    };

    bool pass = true;
    for (const char* kind : {"simulate", "bounds"}) {
        ExperimentConfig cfg;
        cfg.experiment = experiment_from_string(kind);
        cfg.family.kind = TailDescriptor::Family::geometric;
        cfg.family.q = 0.5;
        cfg.family.geometric_threshold = 1e-9;
        cfg.n_grid = {10, 100};
        cfg.replicates = 20000;
        cfg.master_seed = 0xFEA7009;
        RunOptions one, eight;
        one.threads = 1;
        one.out_dir = (base / (std::string(kind) + "_t1")).string();
        eight.threads = 8;
        eight.out_dir = (base / (std::string(kind) + "_t8")).string();
        const auto ra = run_experiment(cfg, one);
        const auto rb = run_experiment(cfg, eight);
        pass &= files_equal(ra.files, rb.files);
    }
    fs::remove_all(base);
    const double sec = t.seconds();
    out << (pass ? "[PASS]" : "[FAIL]")
        << " criterion 8: byte-identical CSV/JSON on 1 vs 8 workers (simulate + bounds)"
        << (mismatch.empty() ? "" : "  first mismatch: " + mismatch) << ", " << sec << " s\n";
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    using Criterion = bool (*)(std::ostream&);
    const Criterion criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                                  criterion_5, criterion_6, criterion_7, criterion_8};
    int failures = 0;
    for (int k = 1; k <= 8; ++k) {
        if (only != 0 && only != k) continue;
        if (!criteria[k - 1](std::cout)) ++failures;
    }
    if (only == 0)
        std::cout << (failures == 0 ? "all criteria passed"
                                    : std::to_string(failures) + " criteria failed")
                  << "\n";
    return failures;
}
