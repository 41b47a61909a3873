#pragma once

#include <stdexcept>
#include <string>

namespace nlc {

/// Invalid argument or configuration detected before any work is done.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field that violates a structural invariant (Hermitian symmetry, size, ...).
class CorruptField : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The director lost its unit-sphere geometry beyond repair by projection.
class ConstraintLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File read/write failures, malformed checkpoints.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlc
