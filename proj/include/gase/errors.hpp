#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gase {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Root finder was handed an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Requested optimum does not exist (e.g. path-loss exponent a <= 2).
class NoInteriorOptimumError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical routine ran out of budget. Carries the best estimate reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : Error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// Spatial Monte Carlo region cannot certify that its truncated tail is
/// negligible next to the estimate.
class TailCertificationError : public Error {
 public:
  TailCertificationError(const std::string& what, double tail_bound,
                         double estimate)
      : Error(what), tail_bound_(tail_bound), estimate_(estimate) {}

  double tail_bound() const noexcept { return tail_bound_; }
  double estimate() const noexcept { return estimate_; }

 private:
  double tail_bound_;
  double estimate_;
};

struct ConfigDiagnostic {
  int line = 0;  // 0 when not attributable to a line
  std::string key;
  std::string message;
};

/// All problems found while parsing a config, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigDiagnostic> diagnostics);

  const std::vector<ConfigDiagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

}  // namespace gase
