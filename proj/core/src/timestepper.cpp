#include "rtmix/timestepper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "rtmix/errors.hpp"

namespace rtmix {

namespace {

// Fehlberg's 4(5) tableau.
constexpr std::array<double, 6> kC{0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0};
constexpr double kA[6][5] = {
    {},
    {1.0 / 4.0},
    {3.0 / 32.0, 9.0 / 32.0},
    {1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0},
    {439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0},
    {-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0},
};
constexpr std::array<double, 6> kB4{25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0,
                                    -1.0 / 5.0, 0.0};
constexpr std::array<double, 6> kB5{16.0 / 135.0,      0.0,          6656.0 / 12825.0,
                                    28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0};

std::vector<double> stop_times(std::span<const double> samples, double t0, double t_end) {
  std::vector<double> stops;
  for (double s : samples) {
    if (!(s >= t0 && s <= t_end))
      throw std::invalid_argument("sample time outside [t0, t_end]");
    if (s > t0) stops.push_back(s);
  }
  stops.push_back(t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  return stops;
}

}  // namespace

void StepController::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(safety > 0.0 && safety < 1.0)) throw std::invalid_argument("safety must lie in (0, 1)");
  if (!(dt_min > 0.0) || !(dt_min <= dt_init && dt_init <= dt_max))
    throw std::invalid_argument("require 0 < dt_min <= dt_init <= dt_max");
}

StepStats integrate(const RhsFunction& rhs, std::vector<double>& y, double t0, double t_end,
                    const StepController& ctrl, std::span<const double> sample_times,
                    const SampleObserver& observer) {
  ctrl.validate();
  if (!(t_end > t0)) throw std::invalid_argument("t_end must exceed t0");
  const std::vector<double> stops = stop_times(sample_times, t0, t_end);

  const std::size_t n = y.size();
  std::array<std::vector<double>, 6> k;
  for (auto& ki : k) ki.assign(n, 0.0);
  std::vector<double> stage(n), y4(n);

  StepStats stats;
  double t = t0;
  double dt = ctrl.dt_init;
  if (observer) observer(t, y);

  std::size_t next = 0;
  while (next < stops.size()) {
    const double target = stops[next];
    double h = dt;
    bool lands = false;
    // Snap to the stop when the remainder after this step would be negligible.
    if (t + h >= target - 1e-12 * std::max(1.0, std::abs(target))) {
      h = target - t;
      lands = true;
    }

    for (int s = 0; s < 6; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = y[i];
        for (int j = 0; j < s; ++j) acc += h * kA[s][j] * k[j][i];
        stage[i] = acc;
      }
      rhs(t + kC[s] * h, stage, k[s]);
    }
    stats.rhs_evaluations += 6;

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double inc4 = 0.0, diff = 0.0;
      for (int s = 0; s < 6; ++s) {
        inc4 += kB4[s] * k[s][i];
        diff += (kB5[s] - kB4[s]) * k[s][i];
      }
      y4[i] = y[i] + h * inc4;
      const double scale = ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y[i]), std::abs(y4[i]));
      const double e = std::abs(h * diff) / scale;
      if (std::isnan(e)) throw NonFiniteState("step error estimate");
      err = std::max(err, e);
    }

    const double proposal =
        err == 0.0 ? ctrl.dt_max : ctrl.safety * h * std::pow(err, -0.2);
    if (err <= 1.0) {
      y.swap(y4);
      t = lands ? target : t + h;
      ++stats.accepted;
      dt = std::clamp(proposal, ctrl.dt_min, ctrl.dt_max);
      if (lands) {
        if (observer) observer(t, y);
        ++next;
      }
    } else {
      ++stats.rejected;
      if (proposal < ctrl.dt_min) throw StepSizeUnderflow(t, proposal);
      dt = std::min(proposal, ctrl.dt_max);
    }
  }
  stats.final_dt = dt;
  return stats;
}

Trajectory integrate(const RhsFunction& rhs, std::vector<double> y0, double t0, double t_end,
                     const StepController& ctrl, std::span<const double> sample_times) {
  Trajectory traj;
  traj.stats = integrate(rhs, y0, t0, t_end, ctrl, sample_times,
                         [&traj](double t, std::span<const double> y) {
                           traj.times.push_back(t);
                           traj.states.emplace_back(y.begin(), y.end());
                         });
  return traj;
}

}  // namespace rtmix
