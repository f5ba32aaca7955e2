#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "featmass/config.hpp"

namespace featmass {

// CLI-level overrides; none of these participate in the config digest.
struct RunOptions {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::int64_t threads = 0;  // 0 = hardware
};

struct RunResult {
    std::vector<std::string> files;       // paths written, in order
    std::size_t bound_violations = 0;     // theorem-backed violations (bounds runs)
    std::size_t printed_violations = 0;   // as-displayed right-tail violations
};

// Validates, runs the experiment described by cfg, writes CSV + JSON
// artifacts. Output bytes depend only on the scientific config fields, never
// on thread count. Throws ConfigError / IoError; numeric failures propagate
// as std::domain_error / std::invalid_argument.
RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Exit codes used by the CLI (documented in the README).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;
inline constexpr int kExitNumericError = 4;
inline constexpr int kExitBoundViolation = 5;

}  // namespace featmass
