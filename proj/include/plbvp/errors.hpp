#pragma once

#include <stdexcept>
#include <string>

namespace plbvp {

// Unusable user input: malformed config file, unknown keys, bad flags.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Mathematically invalid request or solver breakdown: inadmissible
// amplitude, missing sign change, step-size underflow, quadrature
// non-convergence.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plbvp
