#pragma once

#include <stdexcept>
#include <string>

namespace fracdim2d {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, std::string parameter = {})
      : std::runtime_error(message), kind_(std::move(kind)), parameter_(std::move(parameter)) {}

  const std::string& kind() const noexcept { return kind_; }
  /// Name of the offending parameter, empty when not attributable.
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string kind_;
  std::string parameter_;
};

// Point or range outside the domain of a function or operator.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& m, std::string param = {})
      : Error("domain", m, std::move(param)) {}
};

// Invalid order, exponent, bound or other numeric parameter.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& m, std::string param = {})
      : Error("parameter", m, std::move(param)) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& m) : Error("numeric", m) {}
};

// Grid too coarse (or too fine) for the requested mesh size.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& m, std::string param = {})
      : Error("resolution", m, std::move(param)) {}
};

// Input too large for an exhaustive oracle.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& m) : Error("size", m) {}
};

class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& m, std::string param = {})
      : Error("catalog", m, std::move(param)) {}
};

class FitError : public Error {
 public:
  explicit FitError(const std::string& m) : Error("fit", m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m, std::string param = {})
      : Error("io", m, std::move(param)) {}
};

}  // namespace fracdim2d
