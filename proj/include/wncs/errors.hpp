#pragma once

#include <stdexcept>
#include <string>

namespace wncs {

// Invalid argument outside an operation's stated domain.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / input-file validation failure (CLI exit code 1).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical routine failed to converge. Carries the best estimate so far.
struct NumericError : std::runtime_error {
  NumericError(const std::string& what, double partial)
      : std::runtime_error(what), partial_estimate(partial) {}
  double partial_estimate;
};

}  // namespace wncs
