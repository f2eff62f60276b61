#pragma once
//
// Error taxonomy for the whole library.
//
// Two top-level families map onto the CLI exit codes:
//   ConfigError  -> exit 2 (bad input: unparsable file, unknown key, invalid value)
//   PhysicsError -> exit 3 (valid input, but the model has no usable solution:
//                   NoRealRoot, Unstable, ModelBreakdown, NoConvergence, ...)
//
// PhysicsError carries a short machine-readable kind string so callers (tests,
// sweep drivers) can record the failure mode without parsing prose.

#include <stdexcept>
#include <string>

namespace cscool {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class PhysicsError : public std::runtime_error {
public:
    PhysicsError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

} // namespace cscool
