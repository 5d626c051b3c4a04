#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rtmix/errors.hpp"
#include "rtmix/initcond.hpp"

using namespace rtmix;
using namespace rtmix::initcond;
using spectral::PeriodicGrid;

TEST(SplitMix64, ReferenceSequence) {
  // Published outputs of the reference generator for seed 1234567.
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 6457827717110365317ULL);
  EXPECT_EQ(g.next(), 3203168211198807973ULL);
  EXPECT_EQ(g.next(), 9817491932198370423ULL);
}

TEST(SplitMix64, UniformIsInHalfOpenUnitInterval) {
  SplitMix64 g(42);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform_open0();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(GaussianStream, BoxMullerCosineFirst) {
  const std::uint64_t seed = 9, draw = 2;
  const std::uint64_t state = SplitMix64(seed).next() ^ SplitMix64(~draw).next();
  SplitMix64 u(state);
  const double u1 = u.uniform_open0(), u2 = u.uniform_open0();
  const double r = std::sqrt(-2.0 * std::log(u1));
  GaussianStream g(seed, draw);
  EXPECT_DOUBLE_EQ(g.next(), r * std::cos(2 * M_PI * u2));
  EXPECT_DOUBLE_EQ(g.next(), r * std::sin(2 * M_PI * u2));
}

TEST(GaussianStream, Moments) {
  GaussianStream g(123, 0);
  const int n = 400000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.next();
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  EXPECT_NEAR(s4 / n, 3.0, 0.05);
}

TEST(GaussianStream, DistinctStreams) {
  GaussianStream a(1, 0), b(2, 0), c(1, 1);
  const double x = a.next();
  EXPECT_NE(x, b.next());
  EXPECT_NE(x, c.next());
}

TEST(RandomTrig, DeterministicAndNormalized) {
  const PeriodicGrid g(128);
  const RandomTrigSpec spec{50, M_PI / 100, 7, 0};
  const RealField a = random_trig(g, spec);
  const RealField b = random_trig(g, spec);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a[j], b[j]);
  EXPECT_NEAR(spectral::l2_norm(a), M_PI / 100, 1e-15);
  EXPECT_NEAR(a.mean(), 0.0, 1e-16);
}

TEST(RandomTrig, CoefficientsFollowDrawOrder) {
  const int n = 64, modes = 5;
  const PeriodicGrid g(n);
  const RealField f = random_trig(g, {modes, 1.0, 3, 4});
  GaussianStream gs(3, 4);
  std::vector<double> a(modes + 1), b(modes + 1);
  double sum_sq = 0;
  for (int m = 1; m <= modes; ++m) {
    a[m] = gs.next();
    b[m] = gs.next();
    sum_sq += a[m] * a[m] + b[m] * b[m];
  }
  // ||a cos + b sin||^2 = pi (a^2 + b^2) per mode.
  const double scale = 1.0 / std::sqrt(M_PI * sum_sq);
  const oracle::Spectrum s = oracle::dft({f.values().begin(), f.values().end()});
  for (int m = 1; m <= modes; ++m) {
    EXPECT_NEAR(s.at(m).real(), scale * a[m] / 2, 1e-14);
    EXPECT_NEAR(s.at(m).imag(), -scale * b[m] / 2, 1e-14);
  }
  for (int m = modes + 1; m <= n / 2; ++m) EXPECT_LT(std::abs(s.at(m)), 1e-15);
  EXPECT_LT(std::abs(s.at(0)), 1e-16);
}

TEST(RandomTrig, SeedsGiveDifferentDraws) {
  const PeriodicGrid g(64);
  const RealField a = random_trig(g, {10, 1.0, 0, 0});
  const RealField b = random_trig(g, {10, 1.0, 1, 0});
  EXPECT_GT((a - b).max_abs(), 1e-3);
}

TEST(RandomTrig, RejectsBadModeCount) {
  const PeriodicGrid g(16);
  EXPECT_THROW(random_trig(g, {0, 1.0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(random_trig(g, {9, 1.0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(random_trig(g, {2, 0.0, 0, 0}), std::invalid_argument);
}

TEST(SineMode, Values) {
  const PeriodicGrid g(16);
  const RealField s = sine_mode(g, 3, 2.0, Phase::sin);
  const RealField c = sine_mode(g, 3, 2.0, Phase::cos);
  for (int j = 0; j < 16; ++j) {
    EXPECT_DOUBLE_EQ(s[j], 2.0 * std::sin(3 * g.node(j)));
    EXPECT_DOUBLE_EQ(c[j], 2.0 * std::cos(3 * g.node(j)));
  }
  EXPECT_THROW(sine_mode(g, 9, 1.0, Phase::sin), std::invalid_argument);
}

TEST(TiltedInterface, PiecewiseLinearAndPeriodic) {
  const int n = 64;
  const PeriodicGrid g(n);
  const double theta = 5.7 * M_PI / 180.0;
  const RealField f = tilted_interface(g, theta);
  const double t = std::tan(theta);
  EXPECT_NEAR(f[0], 0.0, 1e-15);           // alpha = -pi
  EXPECT_NEAR(f[n / 2], 0.0, 1e-15);       // alpha = 0
  EXPECT_NEAR(f[n / 4], t * M_PI / 2, 1e-15);   // alpha = -pi/2, the peak
  EXPECT_NEAR(f[3 * n / 4], -t * M_PI / 2, 1e-15);  // alpha = pi/2, the trough
  EXPECT_NEAR(f.mean(), 0.0, 1e-16);
  // Odd about alpha = 0.
  for (int j = 1; j < n / 2; ++j) EXPECT_NEAR(f[n / 2 + j], -f[n / 2 - j], 1e-15);
  EXPECT_THROW(tilted_interface(g, M_PI / 2), std::invalid_argument);
}
