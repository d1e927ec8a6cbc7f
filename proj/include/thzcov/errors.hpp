#pragma once
#include <stdexcept>
#include <string>

namespace thzcov {

// Bad configuration or input; CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation has no feasible/tractable answer (training SINR
// unreachable, inclusion-exclusion set too large); CLI exit code 3.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure; CLI exit code 4.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace thzcov
