#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// A point lies outside the open unit disk or ball.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numeric parameter (radius, weight, exponent, step) is out of range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function variant was used where it does not apply, e.g. a ball
/// polynomial evaluated on the disk.
class TypeMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed suite configuration or command line.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A report file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bergman
