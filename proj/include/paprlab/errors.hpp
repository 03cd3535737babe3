#pragma once

#include <stdexcept>
#include <string>

namespace paprlab {

// Invalid or inconsistent experiment configuration. CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (unstable filter, degenerate input). Exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace paprlab
