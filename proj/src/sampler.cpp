#include "featmass/sampler.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "featmass/rng.hpp"
#include "featmass/special.hpp"

namespace featmass {

namespace {

void check_grid(std::span<const std::int64_t> n_grid) {
    if (n_grid.empty()) throw std::invalid_argument("n_grid must not be empty");
    std::int64_t prev = 0;
    for (std::int64_t n : n_grid) {
        if (n <= prev)
            throw std::invalid_argument("n_grid must be strictly increasing and positive");
        prev = n;
    }
}

// Per-increment sampling plan, shared read-only by all replicates of a fixed
// family. Features are sorted by decreasing p, so a single cut separates the
// mode-path head (large delta*p) from the cheap bottom-path tail where one
// uniform against (1-p)^delta resolves almost every feature to zero.
struct StepPlan {
    std::int64_t delta = 0;
    std::size_t mode_cut = 0;
    std::vector<double> zero_prob;  // (1-p_j)^delta, entries [mode_cut, J)
};

struct TrajectoryPlan {
    const ProbabilityVector* pv = nullptr;
    std::int64_t max_tracked_frequency = 10;
    std::vector<double> odds;  // p/(1-p); unused (0) where p == 1
    std::vector<StepPlan> steps;
};

TrajectoryPlan make_plan(const ProbabilityVector& pv, std::span<const std::int64_t> n_grid,
                         std::int64_t max_tracked_frequency) {
    TrajectoryPlan plan;
    plan.pv = &pv;
    plan.max_tracked_frequency = max_tracked_frequency;
    const auto& p = pv.values();
    plan.odds.resize(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        plan.odds[j] = p[j] < 1.0 ? p[j] / (1.0 - p[j]) : 0.0;

    std::int64_t prev_n = 0;
    for (std::int64_t n : n_grid) {
        StepPlan step;
        step.delta = n - prev_n;
        prev_n = n;
        const double delta = static_cast<double>(step.delta);
        std::size_t cut = 0;
        while (cut < p.size() && (p[cut] > 0.5 || delta * p[cut] > 30.0)) ++cut;
        step.mode_cut = cut;
        step.zero_prob.resize(p.size());
        for (std::size_t j = cut; j < p.size(); ++j)
            step.zero_prob[j] = pow_one_minus(p[j], delta);
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

void advance_counts(const TrajectoryPlan& plan, const StepPlan& step, Xoshiro256pp& rng,
                    std::vector<std::uint32_t>& counts) {
    const auto& p = plan.pv->values();
    for (std::size_t j = 0; j < step.mode_cut; ++j)
        counts[j] += static_cast<std::uint32_t>(binomial(rng, step.delta, p[j]));
    for (std::size_t j = step.mode_cut; j < p.size(); ++j) {
        const double u = rng.uniform();
        const double zero = step.zero_prob[j];
        if (u < zero) continue;
        // exact CDF inversion, continued past k = 0
        double pmf = zero, cdf = zero;
        std::int64_t k = 0;
        while (u >= cdf && k < step.delta) {
            pmf *= plan.odds[j] * static_cast<double>(step.delta - k) /
                   static_cast<double>(k + 1);
            cdf += pmf;
            ++k;
        }
        counts[j] += static_cast<std::uint32_t>(k);
    }
}

StatisticsRecord summarize_counts(const ProbabilityVector& pv,
                                  const std::vector<std::uint32_t>& counts, std::int64_t n,
                                  std::int64_t r_max) {
    StatisticsRecord rec;
    rec.n = n;
    rec.freq_counts.assign(static_cast<std::size_t>(r_max), 0);
    KahanSum unseen;
    const auto& p = pv.values();
    for (std::size_t j = 0; j < p.size(); ++j) {
        const std::uint32_t c = counts[j];
        if (c == 0) {
            unseen.add(p[j]);
            continue;
        }
        ++rec.distinct;
        if (c <= static_cast<std::uint32_t>(r_max)) ++rec.freq_counts[c - 1];
    }
    rec.missing_mass_oracle = unseen.value() + pv.tail_mass_bound();
    rec.estimate = static_cast<double>(rec.freq_counts[0]) / static_cast<double>(n);
    return rec;
}

std::vector<StatisticsRecord> run_trajectory(const TrajectoryPlan& plan,
                                             std::span<const std::int64_t> n_grid,
                                             Xoshiro256pp& rng) {
    std::vector<std::uint32_t> counts(plan.pv->size(), 0);
    std::vector<StatisticsRecord> out;
    out.reserve(n_grid.size());
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        advance_counts(plan, plan.steps[g], rng, counts);
        out.push_back(summarize_counts(*plan.pv, counts, n_grid[g],
                                       plan.max_tracked_frequency));
    }
    return out;
}

}  // namespace

SufficientStats sample_counts(const ProbabilityVector& pv, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample_counts: n must be >= 1");
    const std::int64_t grid[1] = {n};
    const TrajectoryPlan plan = make_plan(pv, grid, 1);
    Xoshiro256pp rng(seed);
    SufficientStats stats;
    stats.n = n;
    stats.counts.assign(pv.size(), 0);
    advance_counts(plan, plan.steps[0], rng, stats.counts);
    return stats;
}

std::vector<StatisticsRecord> sample_trajectory(const ProbabilityVector& pv,
                                                std::span<const std::int64_t> n_grid,
                                                std::uint64_t seed,
                                                std::int64_t max_tracked_frequency) {
    check_grid(n_grid);
    if (max_tracked_frequency < 1)
        throw std::domain_error("sample_trajectory: max_tracked_frequency must be >= 1");
    const TrajectoryPlan plan = make_plan(pv, n_grid, max_tracked_frequency);
    Xoshiro256pp rng(seed);
    return run_trajectory(plan, n_grid, rng);
}

StatisticsRecord summarize(const ProbabilityVector& pv, const SufficientStats& stats,
                           std::int64_t max_tracked_frequency) {
    if (stats.counts.size() != pv.size())
        throw std::invalid_argument("summarize: counts length does not match the probability vector");
    if (stats.n < 1) throw std::domain_error("summarize: n must be >= 1");
    if (max_tracked_frequency < 1)
        throw std::domain_error("summarize: max_tracked_frequency must be >= 1");
    for (std::uint32_t c : stats.counts)
        if (c > static_cast<std::uint64_t>(stats.n))
            throw std::invalid_argument("summarize: count exceeds sample size");
    return summarize_counts(pv, stats.counts, stats.n, max_tracked_frequency);
}

ReplicateDataset run_replicates(const Family& family, std::span<const std::int64_t> n_grid,
                                std::int64_t replicates, std::uint64_t master_seed,
                                std::int64_t max_tracked_frequency, std::int64_t threads) {
    check_grid(n_grid);
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (max_tracked_frequency < 1)
        throw std::domain_error("run_replicates: max_tracked_frequency must be >= 1");

    const auto* fixed = std::get_if<ProbabilityVector>(&family);
    TrajectoryPlan fixed_plan;
    if (fixed) fixed_plan = make_plan(*fixed, n_grid, max_tracked_frequency);

    ReplicateDataset ds;
    ds.max_tracked_frequency = max_tracked_frequency;
    ds.records.resize(static_cast<std::size_t>(replicates) * n_grid.size());

    auto worker_body = [&](std::int64_t rep) {
        Xoshiro256pp rng(derive_seed(master_seed, static_cast<std::uint64_t>(rep)));
        std::vector<StatisticsRecord> recs;
        double tail = 0.0;
        if (fixed) {
            recs = run_trajectory(fixed_plan, n_grid, rng);
            tail = fixed->tail_mass_bound();
        } else {
            // fresh prior draw, then sampling, from the same replicate stream
            const auto& spec = std::get<GammaProcessSpec>(family);
            const ProbabilityVector pv = gamma_process_draw(spec, rng());
            const TrajectoryPlan plan = make_plan(pv, n_grid, max_tracked_frequency);
            recs = run_trajectory(plan, n_grid, rng);
            tail = pv.tail_mass_bound();
        }
        for (std::size_t g = 0; g < n_grid.size(); ++g) {
            RepRecord& slot = ds.records[static_cast<std::size_t>(rep) * n_grid.size() + g];
            slot.replicate = rep;
            slot.tail_mass_bound = tail;
            slot.stats = std::move(recs[g]);
        }
    };

    std::int64_t nworkers = threads > 0
                                ? threads
                                : static_cast<std::int64_t>(std::thread::hardware_concurrency());
    if (nworkers < 1) nworkers = 1;
    nworkers = std::min(nworkers, replicates);

    if (nworkers == 1) {
        for (std::int64_t rep = 0; rep < replicates; ++rep) worker_body(rep);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (std::int64_t w = 0; w < nworkers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    const std::int64_t rep = next.fetch_add(1);
                    if (rep >= replicates) break;
                    worker_body(rep);
                }
            });
        for (auto& t : pool) t.join();
    }
    return ds;
}

}  // namespace featmass
