#pragma once

#include <stdexcept>
#include <string>

namespace mspinn {

/// Invalid user input: bad configuration, mismatched shapes, violated preconditions.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure at runtime: overflow, divergence, solver breakdown.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mspinn
