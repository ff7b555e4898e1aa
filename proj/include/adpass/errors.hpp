#pragma once

#include <stdexcept>
#include <string>

namespace adpass {

// invalid or inconsistent scenario configuration (CLI exit code 2)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// basis size outside supported range
struct CapacityError : ConfigError {
    explicit CapacityError(const std::string& what) : ConfigError(what) {}
};

// mismatched vector/matrix dimensions between model and state
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// numerical integration failure (CLI exit code 3); carries the time at
// which the integrator gave up
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what + " at t=" + std::to_string(t)), time(t) {}
    double time;
};

}  // namespace adpass
