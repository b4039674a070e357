#pragma once

#include <stdexcept>
#include <string>

namespace kkit {

/// A precondition of an operation was violated (bad parameter, index out of
/// the admissible set, division by a vanishing quantity).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A dense table request exceeded the configured size guard.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Invalid user configuration (CLI flags, config files).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kkit
