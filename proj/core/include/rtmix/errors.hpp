#pragma once

#include <stdexcept>
#include <string>

namespace rtmix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised from a right-hand-side evaluation. The integrator never swallows
/// these; they surface to the experiment runner as a termination status.
class RhsFailure : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public RhsFailure {
 public:
  explicit NonFiniteState(std::string term)
      : RhsFailure("non-finite value in term '" + term + "'"), term_(std::move(term)) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

/// |d_alpha z|^2 dropped below the admissible floor somewhere on the grid.
class DegenerateParameterization : public RhsFailure {
 public:
  DegenerateParameterization(double min_metric, double floor)
      : RhsFailure("degenerate parameterization: min |dz|^2 = " + std::to_string(min_metric) +
                   " < " + std::to_string(floor)),
        min_metric_(min_metric) {}

  double min_metric() const noexcept { return min_metric_; }

 private:
  double min_metric_;
};

class StepSizeUnderflow : public Error {
 public:
  StepSizeUnderflow(double t, double dt)
      : Error("step size underflow at t = " + std::to_string(t) + " (dt = " + std::to_string(dt) +
              ")"),
        t_(t),
        dt_(dt) {}

  double time() const noexcept { return t_; }
  double step() const noexcept { return dt_; }

 private:
  double t_;
  double dt_;
};

class DegenerateDraw : public Error {
 public:
  using Error::Error;
};

/// Bad configuration. `field` is the dotted key path (or "line N" for
/// syntax errors) so the CLI can point at the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace rtmix
