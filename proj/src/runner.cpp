#include "featmass/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "featmass/asymptotics.hpp"
#include "featmass/bounds.hpp"
#include "featmass/errors.hpp"
#include "featmass/inconsistency.hpp"
#include "featmass/report.hpp"
#include "featmass/version.hpp"

namespace featmass {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string resolve_out_dir(const ExperimentConfig& cfg, const RunOptions& opt) {
    if (opt.out_dir) return *opt.out_dir;
    if (cfg.out_dir) return *cfg.out_dir;
    if (const char* env = std::getenv("FEATMASS_OUT_DIR")) return env;
    return ".";
}

json report_header(const ExperimentConfig& cfg) {
    json j;
    j["version"] = kVersion;
    j["config"] = emit_config(cfg);
    j["config_digest"] = config_digest(cfg);
    return j;
}

json curve_json(const BoundCurve& c) {
    json j;
    j["x"] = c.x;
    j["bound"] = c.bound;
    j["empirical"] = c.empirical;
    j["stderr"] = c.stderr_;
    j["violation"] = std::vector<int>(c.violation.begin(), c.violation.end());
    return j;
}

std::string records_csv(const ReplicateDataset& ds) {
    std::ostringstream out;
    out << "replicate,n,k_n";
    for (std::int64_t r = 1; r <= ds.max_tracked_frequency; ++r) out << ",k_n" << r;
    out << ",m_oracle,m_hat,tail_mass_bound\n";
    for (const RepRecord& rec : ds.records) {
        out << rec.replicate << ',' << rec.stats.n << ',' << rec.stats.distinct;
        for (std::int64_t c : rec.stats.freq_counts) out << ',' << c;
        out << ',' << format_double(rec.stats.missing_mass_oracle) << ','
            << format_double(rec.stats.estimate) << ','
            << format_double(rec.tail_mass_bound) << '\n';
    }
    return out.str();
}

json records_json(const ReplicateDataset& ds) {
    json arr = json::array();
    for (const RepRecord& rec : ds.records) {
        json r;
        r["replicate"] = rec.replicate;
        r["n"] = rec.stats.n;
        r["k_n"] = rec.stats.distinct;
        r["k_nr"] = rec.stats.freq_counts;
        r["m_oracle"] = rec.stats.missing_mass_oracle;
        r["m_hat"] = rec.stats.estimate;
        r["tail_mass_bound"] = rec.tail_mass_bound;
        arr.push_back(std::move(r));
    }
    return arr;
}

struct Emitter {
    std::string dir;
    std::string prefix;
    RunResult* result;

    std::string path(const std::string& suffix) const {
        return (fs::path(dir) / (prefix + suffix)).string();
    }
    void csv(const std::string& suffix, const std::string& content) const {
        const std::string p = path(suffix);
        write_file_atomic(p, content);
        result->files.push_back(p);
    }
    void jsn(const std::string& suffix, const json& j) const {
        const std::string p = path(suffix);
        write_json_atomic(p, j);
        result->files.push_back(p);
    }
};

void run_moments(const ExperimentConfig& cfg, const Emitter& em) {
    const ProbabilityVector pv = std::get<ProbabilityVector>(make_family(cfg.family));
    std::ostringstream csv;
    csv << "n,e_m_n,e_k_n,phi_n,v_minus,v_plus";
    for (std::int64_t r = 1; r <= cfg.r_max; ++r) csv << ",e_k_" << r;
    for (std::int64_t r = 1; r <= cfg.r_max; ++r) csv << ",phi_" << r;
    csv << '\n';
    json rows = json::array();
    for (std::int64_t n : cfg.n_grid) {
        json row;
        row["n"] = n;
        const double em_n = expected_missing_mass(pv, n);
        const double ek_n = expected_distinct(pv, n);
        const double phi_n = poissonized_distinct(pv, n);
        const double vm = left_tail_variance(pv, n);
        const double vp = n > 2 ? right_tail_variance(pv, n) : std::nan("");
        row["e_m_n"] = em_n;
        row["e_k_n"] = ek_n;
        row["phi_n"] = phi_n;
        row["v_minus"] = vm;
        row["v_plus"] = vp;
        csv << n << ',' << format_double(em_n) << ',' << format_double(ek_n) << ','
            << format_double(phi_n) << ',' << format_double(vm) << ',' << format_double(vp);
        std::vector<double> ekr, phir;
        for (std::int64_t r = 1; r <= cfg.r_max; ++r) {
            ekr.push_back(r <= n ? expected_freq_count(pv, n, r) : 0.0);
            phir.push_back(poissonized_freq_count(pv, n, r));
        }
        for (double v : ekr) csv << ',' << format_double(v);
        for (double v : phir) csv << ',' << format_double(v);
        csv << '\n';
        row["e_k_r"] = ekr;
        row["phi_r"] = phir;
        rows.push_back(std::move(row));
    }
    em.csv("_moments.csv", csv.str());
    json j = report_header(cfg);
    j["rows"] = std::move(rows);
    em.jsn("_moments.json", j);
}

void run_simulate(const ExperimentConfig& cfg, const Emitter& em, std::int64_t threads) {
    ReplicateDataset ds = run_replicates(make_family(cfg.family), cfg.n_grid, cfg.replicates,
                                         cfg.master_seed, cfg.r_max, threads);
    ds.config_digest = config_digest(cfg);
    em.csv("_records.csv", records_csv(ds));
    json j = report_header(cfg);
    j["records"] = records_json(ds);
    em.jsn("_records.json", j);
}

void run_bounds(const ExperimentConfig& cfg, const Emitter& em, std::int64_t threads,
                RunResult& result) {
    const Family family = make_family(cfg.family);
    const auto& pv = std::get<ProbabilityVector>(family);
    ReplicateDataset ds = run_replicates(family, cfg.n_grid, cfg.replicates, cfg.master_seed,
                                         cfg.r_max, threads);
    ds.config_digest = config_digest(cfg);

    const std::vector<double> multiples = cfg.x_grid.empty() ? default_x_grid() : cfg.x_grid;
    json j = report_header(cfg);
    json reports = json::array();
    for (std::int64_t n : cfg.n_grid) {
        // deviation grids in absolute units, scaled per statistic
        const double scale_mm = std::sqrt(left_tail_variance(pv, n));
        const double scale_k1 = std::sqrt(expected_freq_count(pv, n, 1));
        std::vector<double> x_mm, x_k1;
        for (double m : multiples) {
            x_mm.push_back(m * scale_mm);
            x_k1.push_back(m * scale_k1);
        }
        const BoundReport rep = empirical_tail_compare(ds, pv, n, x_mm, x_k1);
        result.bound_violations += rep.violations();
        result.printed_violations += rep.violations_printed();

        std::ostringstream mn;
        mn << "x,v_minus,v_plus,left_bound,right_bound,emp_left,emp_right,stderr_left,"
              "stderr_right,violation_flag,right_bound_chernoff,violation_flag_chernoff\n";
        for (std::size_t i = 0; i < rep.mm_left.x.size(); ++i) {
            const bool flag_printed =
                rep.mm_left.violation[i] || rep.mm_right_printed.violation[i];
            const bool flag_chernoff = rep.mm_left.violation[i] || rep.mm_right.violation[i];
            mn << format_double(rep.mm_left.x[i]) << ',' << format_double(rep.v_minus) << ','
               << format_double(rep.v_plus) << ',' << format_double(rep.mm_left.bound[i]) << ','
               << format_double(rep.mm_right_printed.bound[i]) << ','
               << format_double(rep.mm_left.empirical[i]) << ','
               << format_double(rep.mm_right_printed.empirical[i]) << ','
               << format_double(rep.mm_left.stderr_[i]) << ','
               << format_double(rep.mm_right_printed.stderr_[i]) << ',' << (flag_printed ? 1 : 0)
               << ',' << format_double(rep.mm_right.bound[i]) << ',' << (flag_chernoff ? 1 : 0)
               << '\n';
        }
        em.csv("_bounds_mn_n" + std::to_string(n) + ".csv", mn.str());

        std::ostringstream kn;
        kn << "x,e_k1,bound,emp,stderr,violation_flag\n";
        for (std::size_t i = 0; i < rep.k1_two_sided.x.size(); ++i) {
            kn << format_double(rep.k1_two_sided.x[i]) << ',' << format_double(rep.expected_k1)
               << ',' << format_double(rep.k1_two_sided.bound[i]) << ','
               << format_double(rep.k1_two_sided.empirical[i]) << ','
               << format_double(rep.k1_two_sided.stderr_[i]) << ','
               << (rep.k1_two_sided.violation[i] ? 1 : 0) << '\n';
        }
        em.csv("_bounds_kn1_n" + std::to_string(n) + ".csv", kn.str());

        json rj;
        rj["n"] = rep.n;
        rj["replicates"] = rep.replicates;
        rj["v_minus"] = rep.v_minus;
        rj["v_plus"] = rep.v_plus;
        rj["expected_m"] = rep.expected_m;
        rj["expected_k1"] = rep.expected_k1;
        rj["mm_left"] = curve_json(rep.mm_left);
        rj["mm_right"] = curve_json(rep.mm_right_printed);
        rj["mm_right_chernoff"] = curve_json(rep.mm_right);
        rj["k1_two_sided"] = curve_json(rep.k1_two_sided);
        rj["violations"] = rep.violations();
        rj["violations_printed_form"] = rep.violations_printed();
        reports.push_back(std::move(rj));
    }
    j["reports"] = std::move(reports);
    j["violations"] = result.bound_violations;
    j["violations_printed_form"] = result.printed_violations;
    em.jsn("_bounds.json", j);
}

void run_karlin(const ExperimentConfig& cfg, const Emitter& em) {
    const RegVarSpec& spec = cfg.family.power_law;
    std::ostringstream csv;
    csv << "n,r,alpha,scale,expected_k_nr,asymptote,ratio\n";
    json rows = json::array();
    for (std::int64_t n : cfg.n_grid) {
        for (std::int64_t r : cfg.r_values) {
            if (r > n) continue;
            const double ratio = karlin_ratio(spec, n, r);
            const double asym = karlin_constant(spec.alpha, r) *
                                std::pow(static_cast<double>(n), spec.alpha) *
                                std::pow(spec.scale, spec.alpha);
            const double ek = ratio * asym;
            csv << n << ',' << r << ',' << format_double(spec.alpha) << ','
                << format_double(spec.scale) << ',' << format_double(ek) << ','
                << format_double(asym) << ',' << format_double(ratio) << '\n';
            json row;
            row["n"] = n;
            row["r"] = r;
            row["expected_k_nr"] = ek;
            row["asymptote"] = asym;
            row["ratio"] = ratio;
            rows.push_back(std::move(row));
        }
    }
    em.csv("_karlin.csv", csv.str());
    json j = report_header(cfg);
    j["rows"] = std::move(rows);
    em.jsn("_karlin.json", j);
}

json ratio_rows_json(const std::vector<std::int64_t>& n_grid,
                     const std::vector<std::int64_t>& used,
                     const std::vector<std::int64_t>& degenerate,
                     const std::vector<double>& mean, const std::vector<double>& median,
                     const std::vector<double>& sd, const std::vector<double>& fraction,
                     const char* fraction_key) {
    json rows = json::array();
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        json row;
        row["n"] = n_grid[i];
        row["used"] = used[i];
        row["degenerate"] = degenerate[i];
        row["mean"] = mean[i];
        row["median"] = median[i];
        row["sd"] = sd[i];
        row[fraction_key] = fraction[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

void run_consistency(const ExperimentConfig& cfg, const Emitter& em, std::int64_t threads) {
    ReplicateDataset ds = run_replicates(make_family(cfg.family), cfg.n_grid, cfg.replicates,
                                         cfg.master_seed, cfg.r_max, threads);
    ds.config_digest = config_digest(cfg);
    const ConsistencyDiagnostic d = consistency_diagnostic(ds, cfg.epsilon);
    std::ostringstream csv;
    csv << "n,used,degenerate,mean,median,sd,frac_within\n";
    for (std::size_t i = 0; i < d.n_grid.size(); ++i)
        csv << d.n_grid[i] << ',' << d.used[i] << ',' << d.degenerate[i] << ','
            << format_double(d.mean[i]) << ',' << format_double(d.median[i]) << ','
            << format_double(d.sd[i]) << ',' << format_double(d.fraction_within[i]) << '\n';
    em.csv("_consistency.csv", csv.str());
    json j = report_header(cfg);
    j["epsilon"] = d.epsilon;
    j["rows"] = ratio_rows_json(d.n_grid, d.used, d.degenerate, d.mean, d.median, d.sd,
                                d.fraction_within, "frac_within");
    em.jsn("_consistency.json", j);
}

void run_inconsistency(const ExperimentConfig& cfg, const Emitter& em, std::int64_t threads) {
    const InconsistencyReport rep =
        inconsistency_experiment(cfg.n_grid, cfg.replicates, cfg.epsilon, cfg.master_seed,
                                 make_family(cfg.family), cfg.r_max, threads);
    std::ostringstream csv;
    csv << "n,used,degenerate,mean,median,sd,frac_outside,floor_constant\n";
    for (std::size_t i = 0; i < rep.n_grid.size(); ++i)
        csv << rep.n_grid[i] << ',' << rep.used[i] << ',' << rep.degenerate[i] << ','
            << format_double(rep.mean[i]) << ',' << format_double(rep.median[i]) << ','
            << format_double(rep.sd[i]) << ',' << format_double(rep.fraction_outside[i]) << ','
            << format_double(rep.floor_constant) << '\n';
    em.csv("_inconsistency.csv", csv.str());
    json j = report_header(cfg);
    j["epsilon"] = rep.epsilon;
    j["epsilon_bar"] = rep.epsilon_bar;
    j["floor_constant"] = rep.floor_constant;
    j["rows"] = ratio_rows_json(rep.n_grid, rep.used, rep.degenerate, rep.mean, rep.median,
                                rep.sd, rep.fraction_outside, "frac_outside");
    em.jsn("_inconsistency.json", j);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg_in, const RunOptions& opt) {
    ExperimentConfig cfg = cfg_in;
    if (opt.seed) cfg.master_seed = *opt.seed;  // override is part of the run identity

    const std::string dir = resolve_out_dir(cfg, opt);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "'");

    RunResult result;
    Emitter em{dir, cfg.prefix.value_or(to_string(cfg.experiment)), &result};

    switch (cfg.experiment) {
        case ExperimentKind::moments: run_moments(cfg, em); break;
        case ExperimentKind::simulate: run_simulate(cfg, em, opt.threads); break;
        case ExperimentKind::bounds: run_bounds(cfg, em, opt.threads, result); break;
        case ExperimentKind::karlin: run_karlin(cfg, em); break;
        case ExperimentKind::consistency: run_consistency(cfg, em, opt.threads); break;
        case ExperimentKind::inconsistency: run_inconsistency(cfg, em, opt.threads); break;
    }
    return result;
}

}  // namespace featmass
