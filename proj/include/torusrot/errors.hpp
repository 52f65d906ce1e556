#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torusrot {

// A computation produced NaN/Inf or otherwise left the representable range.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed map source. `position` is a byte offset into the source string.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Invalid run configuration or arguments (bad grid, bad matrix, missing inverse, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torusrot
