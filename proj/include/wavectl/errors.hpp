#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavectl {

/// Boundary parameter outside [0, perimeter).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Outward normal requested at a polygon vertex.
class UndefinedNormalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidCurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Objects built on different domains, horizons or grids were combined.
class IncompatibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// More modes requested than the discrete problem has.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Explicit time step violates the CFL bound.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Krylov solve on the control Gramian stopped making progress.
class IllConditionedGramianError : public std::runtime_error {
 public:
  IllConditionedGramianError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}

  const std::vector<double>& residual_history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

/// Scenario configuration problem; `key()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace wavectl
