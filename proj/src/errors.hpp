#pragma once

#include <stdexcept>
#include <string>

namespace slising {

// Bad user input: malformed graphs, unknown ids, invalid parameters.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configurable resource cap (enumeration size, spin count) was exceeded.
struct CapError : std::runtime_error {
    explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested method is outside its certified regime (e.g. spectral
// radius >= 1 for the determinant evaluation).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical consistency assertion failed (non-real determinant, winding
// angle off the 2*pi grid, ...).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace slising
