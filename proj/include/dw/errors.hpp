#pragma once

#include <stdexcept>
#include <string>

namespace dw {

// Bad user-supplied configuration (grid sizes, parameter windows, CFL, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A time stepper produced non-finite values.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_index(step) {}
  std::size_t step_index;
};

// Weight-family construction failed (offset search exhausted).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dw
