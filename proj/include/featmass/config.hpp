#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "featmass/generators.hpp"
#include "featmass/sampler.hpp"

namespace featmass {

enum class ExperimentKind { moments, simulate, bounds, karlin, consistency, inconsistency };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

// Tagged generator spec as it appears in config files.
struct FamilyConfig {
    TailDescriptor::Family kind = TailDescriptor::Family::none;
    RegVarSpec power_law;           // kind == power_law
    double q = 0.0;                 // kind == geometric
    double geometric_threshold = 0.0;
    std::int64_t count = 0;         // kind == finite_uniform
    double atom = 0.0;
    GammaProcessSpec gamma;         // kind == gamma_process

    bool operator==(const FamilyConfig&) const = default;
};

// Declarative experiment description. Fields below the dashed line are
// runtime/output knobs: they do not affect results and are excluded from the
// config digest and the emitted config mirror.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::moments;
    FamilyConfig family;
    std::vector<std::int64_t> n_grid;
    std::int64_t replicates = 100;
    std::uint64_t master_seed = 1;
    std::int64_t r_max = 10;                  // highest tracked frequency
    double epsilon = 0.1;                     // ratio band half-width
    std::vector<double> x_grid;               // deviation grid, in units of each
                                              // statistic's scale (see README)
    std::vector<std::int64_t> r_values = {1, 2};  // karlin: frequencies to check
    // ---- runtime / output ----
    std::optional<std::string> out_dir;
    std::optional<std::string> prefix;

    bool operator==(const ExperimentConfig&) const = default;
};

// Strict parse: unknown keys anywhere are errors, every message names the
// offending field, and the whole config is validated before any computation.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// Scientific fields only (see above); parse_config(emit_config(c)) == c
// modulo the runtime/output knobs.
nlohmann::json emit_config(const ExperimentConfig& cfg);

// FNV-1a 64 of the canonical (sorted-key) dump of emit_config.
std::string config_digest(const ExperimentConfig& cfg);

// Materialize the family: a fixed ProbabilityVector, or the gamma spec for
// per-replicate draws.
Family make_family(const FamilyConfig& fc);

// Default grid 0, 0.5, ..., 5 used when x_grid is empty.
std::vector<double> default_x_grid();

}  // namespace featmass
