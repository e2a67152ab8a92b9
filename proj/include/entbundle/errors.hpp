#pragma once

#include <stdexcept>
#include <string>

namespace entbundle {

// Bad user-facing input (malformed files, inconsistent dimensions, out-of-range
// parameters). The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A size guard tripped (state enumeration or closure would exceed the supported
// range of the dense algorithms). CLI exit code 4.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// The time integrator left its accuracy envelope (norm drift past tolerance).
// CLI exit code 3, with a hint to reduce dt.
struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entbundle
