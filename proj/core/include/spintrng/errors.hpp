#pragma once

#include <stdexcept>
#include <string>

namespace spintrng {

// Invalid configuration, profile, or argument values.  CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (integrator non-convergence, out-of-model inputs).
// CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spintrng
