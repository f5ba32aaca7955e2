#include "featmass/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "featmass/errors.hpp"

namespace featmass {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& known) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.contains(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number_integer())
        throw ConfigError(where + "." + key + ": expected an integer");
    return obj[key].get<std::int64_t>();
}

FamilyConfig parse_family(const json& j) {
    FamilyConfig fc;
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("family: expected an object with a string 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "power_law") {
        require_keys(j, "family", {"kind", "alpha", "scale", "log_exponent",
                                   "truncation_threshold"});
        fc.kind = TailDescriptor::Family::power_law;
        fc.power_law.alpha = get_number(j, "family", "alpha");
        fc.power_law.scale = get_number(j, "family", "scale");
        fc.power_law.log_exponent =
            j.contains("log_exponent") ? get_number(j, "family", "log_exponent") : 0.0;
        fc.power_law.truncation_threshold = get_number(j, "family", "truncation_threshold");
        if (!(fc.power_law.alpha > 0.0 && fc.power_law.alpha < 1.0))
            throw ConfigError("family.alpha: must lie in (0, 1)");
        if (!(fc.power_law.scale > 0.0 && fc.power_law.scale <= 1.0))
            throw ConfigError("family.scale: must lie in (0, 1]");
        if (!(fc.power_law.truncation_threshold > 0.0))
            throw ConfigError("family.truncation_threshold: must be > 0");
    } else if (kind == "geometric") {
        require_keys(j, "family", {"kind", "q", "truncation_threshold"});
        fc.kind = TailDescriptor::Family::geometric;
        fc.q = get_number(j, "family", "q");
        fc.geometric_threshold = get_number(j, "family", "truncation_threshold");
        if (!(fc.q > 0.0 && fc.q < 1.0)) throw ConfigError("family.q: must lie in (0, 1)");
        if (!(fc.geometric_threshold > 0.0))
            throw ConfigError("family.truncation_threshold: must be > 0");
    } else if (kind == "finite_uniform") {
        require_keys(j, "family", {"kind", "count", "p"});
        fc.kind = TailDescriptor::Family::finite_uniform;
        fc.count = get_integer(j, "family", "count");
        fc.atom = get_number(j, "family", "p");
        if (fc.count < 1) throw ConfigError("family.count: must be >= 1");
        if (!(fc.atom > 0.0 && fc.atom <= 1.0))
            throw ConfigError("family.p: must lie in (0, 1]");
    } else if (kind == "gamma_process") {
        require_keys(j, "family", {"kind", "jump_truncation", "tilt"});
        fc.kind = TailDescriptor::Family::gamma_process;
        fc.gamma.jump_truncation = get_number(j, "family", "jump_truncation");
        fc.gamma.tilt = j.contains("tilt") ? get_integer(j, "family", "tilt") : 0;
        if (!(fc.gamma.jump_truncation > 0.0))
            throw ConfigError("family.jump_truncation: must be > 0");
        if (fc.gamma.tilt < 0) throw ConfigError("family.tilt: must be >= 0");
    } else {
        throw ConfigError("family.kind: unknown family '" + kind + "'");
    }
    return fc;
}

json emit_family(const FamilyConfig& fc) {
    json j;
    switch (fc.kind) {
        case TailDescriptor::Family::power_law:
            j["kind"] = "power_law";
            j["alpha"] = fc.power_law.alpha;
            j["scale"] = fc.power_law.scale;
            j["log_exponent"] = fc.power_law.log_exponent;
            j["truncation_threshold"] = fc.power_law.truncation_threshold;
            break;
        case TailDescriptor::Family::geometric:
            j["kind"] = "geometric";
            j["q"] = fc.q;
            j["truncation_threshold"] = fc.geometric_threshold;
            break;
        case TailDescriptor::Family::finite_uniform:
            j["kind"] = "finite_uniform";
            j["count"] = fc.count;
            j["p"] = fc.atom;
            break;
        case TailDescriptor::Family::gamma_process:
            j["kind"] = "gamma_process";
            j["jump_truncation"] = fc.gamma.jump_truncation;
            j["tilt"] = fc.gamma.tilt;
            break;
        case TailDescriptor::Family::none:
            throw ConfigError("family: not set");
    }
    return j;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::moments: return "moments";
        case ExperimentKind::simulate: return "simulate";
        case ExperimentKind::bounds: return "bounds";
        case ExperimentKind::karlin: return "karlin";
        case ExperimentKind::consistency: return "consistency";
        case ExperimentKind::inconsistency: return "inconsistency";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "moments") return ExperimentKind::moments;
    if (name == "simulate") return ExperimentKind::simulate;
    if (name == "bounds") return ExperimentKind::bounds;
    if (name == "karlin") return ExperimentKind::karlin;
    if (name == "consistency") return ExperimentKind::consistency;
    if (name == "inconsistency") return ExperimentKind::inconsistency;
    throw ConfigError("experiment: unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const nlohmann::json& j) {
    require_keys(j, "config",
                 {"experiment", "family", "n_grid", "replicates", "master_seed", "r_max",
                  "epsilon", "x_grid", "r_values", "out_dir", "prefix"});
    ExperimentConfig cfg;
    if (!j.contains("experiment") || !j["experiment"].is_string())
        throw ConfigError("config: missing string key 'experiment'");
    cfg.experiment = experiment_from_string(j["experiment"].get<std::string>());
    if (!j.contains("family")) throw ConfigError("config: missing key 'family'");
    cfg.family = parse_family(j["family"]);

    if (!j.contains("n_grid") || !j["n_grid"].is_array() || j["n_grid"].empty())
        throw ConfigError("config.n_grid: expected a non-empty array of integers");
    cfg.n_grid.clear();
    std::int64_t prev = 0;
    for (const auto& e : j["n_grid"]) {
        if (!e.is_number_integer()) throw ConfigError("config.n_grid: entries must be integers");
        const std::int64_t n = e.get<std::int64_t>();
        if (n <= prev)
            throw ConfigError("config.n_grid: must be strictly increasing and positive");
        cfg.n_grid.push_back(n);
        prev = n;
    }

    if (j.contains("replicates")) {
        cfg.replicates = get_integer(j, "config", "replicates");
        if (cfg.replicates < 1) throw ConfigError("config.replicates: must be >= 1");
    }
    if (j.contains("master_seed")) {
        if (!j["master_seed"].is_number_unsigned() && !j["master_seed"].is_number_integer())
            throw ConfigError("config.master_seed: expected an unsigned integer");
        cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    if (j.contains("r_max")) {
        cfg.r_max = get_integer(j, "config", "r_max");
        if (cfg.r_max < 1) throw ConfigError("config.r_max: must be >= 1");
    }
    if (j.contains("epsilon")) {
        cfg.epsilon = get_number(j, "config", "epsilon");
        if (!(cfg.epsilon > 0.0)) throw ConfigError("config.epsilon: must be > 0");
    }
    if (j.contains("x_grid")) {
        if (!j["x_grid"].is_array()) throw ConfigError("config.x_grid: expected an array");
        cfg.x_grid.clear();
        for (const auto& e : j["x_grid"]) {
            if (!e.is_number()) throw ConfigError("config.x_grid: entries must be numbers");
            const double x = e.get<double>();
            if (x < 0.0) throw ConfigError("config.x_grid: entries must be >= 0");
            cfg.x_grid.push_back(x);
        }
    }
    if (j.contains("r_values")) {
        if (!j["r_values"].is_array() || j["r_values"].empty())
            throw ConfigError("config.r_values: expected a non-empty array of integers");
        cfg.r_values.clear();
        for (const auto& e : j["r_values"]) {
            if (!e.is_number_integer())
                throw ConfigError("config.r_values: entries must be integers");
            const std::int64_t r = e.get<std::int64_t>();
            if (r < 1) throw ConfigError("config.r_values: entries must be >= 1");
            cfg.r_values.push_back(r);
        }
    }
    if (j.contains("out_dir")) {
        if (!j["out_dir"].is_string()) throw ConfigError("config.out_dir: expected a string");
        cfg.out_dir = j["out_dir"].get<std::string>();
    }
    if (j.contains("prefix")) {
        if (!j["prefix"].is_string()) throw ConfigError("config.prefix: expected a string");
        cfg.prefix = j["prefix"].get<std::string>();
    }

    // cross-field checks
    const bool random_family = cfg.family.kind == TailDescriptor::Family::gamma_process;
    if (random_family &&
        (cfg.experiment == ExperimentKind::moments || cfg.experiment == ExperimentKind::bounds ||
         cfg.experiment == ExperimentKind::karlin))
        throw ConfigError("config.family: '" + std::string(to_string(cfg.experiment)) +
                          "' needs a fixed probability family, not gamma_process");
    if (cfg.experiment == ExperimentKind::karlin) {
        if (cfg.family.kind != TailDescriptor::Family::power_law)
            throw ConfigError("config.family: 'karlin' requires the power_law family");
        if (cfg.family.power_law.log_exponent != 0.0)
            throw ConfigError("config.family.log_exponent: 'karlin' requires a pure power law "
                              "(log_exponent = 0)");
    }
    if (cfg.experiment == ExperimentKind::bounds)
        for (std::int64_t n : cfg.n_grid)
            if (n <= 2) throw ConfigError("config.n_grid: 'bounds' requires n > 2");
    if (cfg.experiment == ExperimentKind::inconsistency && !(cfg.epsilon < 1.0 / 6.0))
        throw ConfigError("config.epsilon: 'inconsistency' requires epsilon in (0, 1/6)");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return parse_config(j);
}

nlohmann::json emit_config(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = to_string(cfg.experiment);
    j["family"] = emit_family(cfg.family);
    j["n_grid"] = cfg.n_grid;
    j["replicates"] = cfg.replicates;
    j["master_seed"] = cfg.master_seed;
    j["r_max"] = cfg.r_max;
    j["epsilon"] = cfg.epsilon;
    j["x_grid"] = cfg.x_grid;  // empty means "default grid", resolved at use
    j["r_values"] = cfg.r_values;
    return j;
}

std::string config_digest(const ExperimentConfig& cfg) {
    const std::string dump = emit_config(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Family make_family(const FamilyConfig& fc) {
    switch (fc.kind) {
        case TailDescriptor::Family::power_law: return power_law(fc.power_law);
        case TailDescriptor::Family::geometric: return geometric(fc.q, fc.geometric_threshold);
        case TailDescriptor::Family::finite_uniform: return finite_uniform(fc.count, fc.atom);
        case TailDescriptor::Family::gamma_process: return fc.gamma;
        case TailDescriptor::Family::none: break;
    }
    throw ConfigError("family: not set");
}

std::vector<double> default_x_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(0.5 * i);
    return g;
}

}  // namespace featmass
