#pragma once

#include <stdexcept>
#include <string>

namespace relkura {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failures of the numerics themselves (CLI exit code 3).
struct NumericalError : Error {
  using Error::Error;
};

// Superluminal velocity, out-of-range angle and similar argument violations.
struct DomainError : NumericalError {
  using NumericalError::NumericalError;
};

struct ConvergenceError : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateFit : NumericalError {
  using NumericalError::NumericalError;
};

struct UnsupportedModel : Error {
  using Error::Error;
};

struct ConfigError : Error {
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace relkura
