#pragma once

#include <cstdint>
#include <utility>

#include "rtmix/spectral.hpp"

namespace rtmix::initcond {

using spectral::PeriodicGrid;
using spectral::RealField;

/// SplitMix64 (Steele, Lea & Flood). Part of the reproducibility contract:
/// a seed names the same draw on every platform and build.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1], 53 random bits.
  double uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Standard normal deviates by the basic Box-Muller transform; each pair of
/// uniforms yields the cosine deviate first, then the sine deviate.
class GaussianStream {
 public:
  /// Stream for draw number `draw_index` of ensemble member `seed`.
  GaussianStream(std::uint64_t seed, std::uint64_t draw_index);

  double next();

 private:
  SplitMix64 rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

enum class Phase { sin, cos };

struct RandomTrigSpec {
  int n_modes_used = 1;
  double target_l2 = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t draw_index = 0;
};

/// amp * sin(k alpha) or amp * cos(k alpha) at the grid nodes.
RealField sine_mode(const PeriodicGrid& grid, int k, double amp, Phase phase);

/// S * sum_{j=1..n} (a_j cos(j alpha) + b_j sin(j alpha)) with a_j, b_j drawn
/// in the order a_1, b_1, a_2, b_2, ... and S fixing the discrete L2 norm.
RealField random_trig(const PeriodicGrid& grid, const RandomTrigSpec& spec);

/// Periodic piecewise-linear tilted interface with angle `theta` (radians):
/// tan(theta)(x + pi) on [-pi, -pi/2), -tan(theta) x on |x| <= pi/2,
/// tan(theta)(x - pi) on (pi/2, pi].
RealField tilted_interface(const PeriodicGrid& grid, double theta);

}  // namespace rtmix::initcond
