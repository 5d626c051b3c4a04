#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rtmix {

/// Adaptive step-size control for the embedded Fehlberg 4(5) pair.
struct StepController {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  double dt_init = 1e-4;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  double safety = 0.9;

  /// Throws std::invalid_argument on non-positive tolerances, a safety factor
  /// outside (0, 1) or dt_init outside [dt_min, dt_max].
  void validate() const;

  friend bool operator==(const StepController&, const StepController&) = default;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double final_dt = 0.0;
};

/// States at the requested sample times. t0 is always the first sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  StepStats stats;
};

/// dy/dt = f(t, y), written into `dydt`.
using RhsFunction =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Called at t0 and at every sample time reached.
using SampleObserver = std::function<void(double t, std::span<const double> y)>;

/// Integrates y' = f(t, y) from t0 to t_end with the classical Fehlberg
/// 4(5) pair, advancing the fourth-order solution. Steps are clipped so every
/// entry of `sample_times` is hit exactly; t_end is always sampled.
///
/// Throws StepSizeUnderflow when the controller asks for dt < dt_min and
/// lets RhsFailure from `rhs` propagate.
Trajectory integrate(const RhsFunction& rhs, std::vector<double> y0, double t0, double t_end,
                     const StepController& ctrl, std::span<const double> sample_times = {});

/// Same stepping, but hands samples to `observer` instead of storing them.
/// Returns the step statistics; the final state is left in `y`.
StepStats integrate(const RhsFunction& rhs, std::vector<double>& y, double t0, double t_end,
                    const StepController& ctrl, std::span<const double> sample_times,
                    const SampleObserver& observer);

}  // namespace rtmix
