#include "rtmix/initcond.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rtmix/errors.hpp"

namespace rtmix::initcond {

namespace {

std::uint64_t mix(std::uint64_t x) { return SplitMix64(x).next(); }

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t draw_index)
    : rng_(mix(seed) ^ mix(~draw_index)) {}

double GaussianStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = rng_.uniform_open0();
  const double u2 = rng_.uniform_open0();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

RealField sine_mode(const PeriodicGrid& grid, int k, double amp, Phase phase) {
  if (std::abs(k) > grid.nyquist()) throw std::invalid_argument("mode number exceeds N/2");
  RealField f(grid);
  for (int j = 0; j < grid.size(); ++j) {
    const double x = k * grid.node(j);
    f[j] = amp * (phase == Phase::sin ? std::sin(x) : std::cos(x));
  }
  return f;
}

RealField random_trig(const PeriodicGrid& grid, const RandomTrigSpec& spec) {
  if (spec.n_modes_used < 1 || spec.n_modes_used > grid.nyquist())
    throw std::invalid_argument("random_trig: need 1 <= n <= N/2");
  if (!(spec.target_l2 > 0.0)) throw std::invalid_argument("random_trig: target_l2 must be > 0");

  GaussianStream gauss(spec.seed, spec.draw_index);
  RealField f(grid);
  const int n = grid.size();
  for (int m = 1; m <= spec.n_modes_used; ++m) {
    const double a = gauss.next();
    const double b = gauss.next();
    for (int j = 0; j < n; ++j) {
      const double x = m * grid.node(j);
      f[j] += a * std::cos(x) + b * std::sin(x);
    }
  }
  const double norm = spectral::l2_norm(f);
  if (norm == 0.0) throw DegenerateDraw("random_trig: all coefficients vanished");
  f *= spec.target_l2 / norm;
  return f;
}

RealField tilted_interface(const PeriodicGrid& grid, double theta) {
  if (!(std::abs(theta) < std::numbers::pi / 2))
    throw std::invalid_argument("tilt angle must satisfy |theta| < pi/2");
  const double slope = std::tan(theta);
  const double half_pi = std::numbers::pi / 2;
  RealField f(grid);
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    if (x < -half_pi) {
      f[j] = slope * (x + std::numbers::pi);
    } else if (x <= half_pi) {
      f[j] = -slope * x;
    } else {
      f[j] = slope * (x - std::numbers::pi);
    }
  }
  return f;
}

}  // namespace rtmix::initcond
