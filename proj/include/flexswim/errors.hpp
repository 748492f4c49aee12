#pragma once

#include <stdexcept>
#include <string>

namespace flexswim {

/// Raised when the 3x3 balance system is singular or too ill-conditioned to trust.
class SingularSystemError : public std::runtime_error {
public:
  SingularSystemError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

private:
  double condition_;
};

/// A failure inside a time-stepping run; carries the simulation time of the failing step.
class SimulationError : public std::runtime_error {
public:
  SimulationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}

  double time() const noexcept { return time_; }

private:
  double time_;
};

}  // namespace flexswim
