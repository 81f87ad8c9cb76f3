#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resiq {

/// Configuration or input-file parsing problem. CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what, int line = -1)
        : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line)
    {
    }

    int line() const { return line_; }

  private:
    int line_;
};

/// Model cannot be simulated as configured (e.g. a negative intensity
/// inside the horizon). CLI exit code 3.
class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Too few events for the requested fit or measure. CLI exit code 4.
class InsufficientDataError : public std::runtime_error {
  public:
    InsufficientDataError(const std::string& what, std::size_t observed, std::size_t required)
        : std::runtime_error(what), observed_(observed), required_(required)
    {
    }

    std::size_t observed() const { return observed_; }
    std::size_t required() const { return required_; }

  private:
    std::size_t observed_;
    std::size_t required_;
};

/// Observed data is structurally unusable for the requested estimator
/// (degenerate terms, zero variance). CLI exit code 4.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Event timeline fails validation (overlapping outages, failure outside
/// the mission window). CLI exit code 5.
class EventError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operation invoked outside its stated preconditions. CLI exit code 6.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Evaluation hit a numerical singularity (hazard where reliability has
/// underflowed, power-law intensity at t = 0 with shape < 1).
class SingularityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative fit exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace resiq
