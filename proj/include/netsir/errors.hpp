#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netsir {

/// Malformed or inconsistent configuration input. `line` is 1-based, 0 when
/// the problem is not tied to a single line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A numeric method could not proceed: a per-step probability above one,
/// step-size underflow in the integrator, a non-finite state.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace netsir
