#pragma once

#include <stdexcept>
#include <string>

namespace featmass {

// Invalid or inconsistent experiment configuration. The CLI maps this to its
// config-error exit code; messages always name the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failure to read or write a report artifact.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace featmass
