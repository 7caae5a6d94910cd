#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hbtfisher {

/// Base class for model-level failures. `name()` is a stable identifier
/// (e.g. "SigmaTooSmall") used by the CLI diagnostics and exit-code mapping.
class ModelError : public std::runtime_error {
public:
  ModelError(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

struct SigmaTooSmallError : ModelError {
  explicit SigmaTooSmallError(const std::string& message)
      : ModelError("SigmaTooSmall", message) {}
};

struct EtaOutOfRangeError : ModelError {
  explicit EtaOutOfRangeError(const std::string& message)
      : ModelError("EtaOutOfRange", message) {}
};

struct DegenerateNormalizationError : ModelError {
  explicit DegenerateNormalizationError(const std::string& message)
      : ModelError("DegenerateNormalization", message) {}
};

struct QuadratureFailureError : ModelError {
  explicit QuadratureFailureError(const std::string& message)
      : ModelError("QuadratureFailure", message) {}
};

struct ZeroDenominatorError : ModelError {
  explicit ZeroDenominatorError(const std::string& message)
      : ModelError("ZeroDenominator", message) {}
};

struct OptimizerNonConvergenceError : ModelError {
  explicit OptimizerNonConvergenceError(const std::string& message)
      : ModelError("OptimizerNonConvergence", message) {}
};

/// Thrown by the critical-distance solver when crb(d) - d does not change
/// sign inside the bracket. Carries the scanned (d, g(d)) samples so the
/// caller can show where the bound sits relative to the signal.
class NoSignChangeError : public ModelError {
public:
  NoSignChangeError(const std::string& message,
                    std::vector<std::pair<double, double>> scan)
      : ModelError("NoSignChange", message), scan_(std::move(scan)) {}

  const std::vector<std::pair<double, double>>& scan() const noexcept {
    return scan_;
  }

private:
  std::vector<std::pair<double, double>> scan_;
};

}  // namespace hbtfisher
