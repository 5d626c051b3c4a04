#include <gtest/gtest.h>

#include <cmath>

#include "rtmix/errors.hpp"
#include "rtmix/experiments.hpp"

using namespace rtmix;
using namespace rtmix::experiments;

namespace {

FieldTerm sine(int k, double amp) {
  FieldTerm t;
  t.k = k;
  t.amp = amp;
  return t;
}

ExperimentConfig small_h_run() {
  ExperimentConfig c;
  c.name = "small";
  c.grid_n = 32;
  c.phys = {9.8, 0.0, 1.0, 1.5};
  c.visc = {0.01, 3.0};
  c.init.h = {sine(3, 0.1)};
  c.t_end = 0.1;
  c.sample_interval = 0.02;
  c.snapshot_times = {0.05};
  return c;
}

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST(SampleTimes, GridMergedWithSnapshots) {
  ExperimentConfig c;
  c.t_end = 0.1;
  c.sample_interval = 0.03;
  c.snapshot_times = {0.05, 0.06};
  const auto t = c.sample_times();
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t[2], 0.05);
  EXPECT_EQ(t[3], 0.06);
  EXPECT_EQ(t.back(), 0.1);
}

TEST(SampleTimes, SnapshotReplacesNearbyGridPoint) {
  ExperimentConfig c;
  c.t_end = 1.0;
  c.sample_interval = 0.1;
  c.snapshot_times = {0.3};
  const auto t = c.sample_times();
  EXPECT_EQ(t.size(), 11u);
  EXPECT_EQ(t[3], 0.3);
}

TEST(Validate, NamesOffendingField) {
  auto bad = [](auto mutate) {
    ExperimentConfig c = small_h_run();
    mutate(c);
    return field_of([&] { c.validate(); });
  };
  EXPECT_EQ(bad([](ExperimentConfig&) {}), "<none>");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.grid_n = 48; }), "grid.n");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.phys.rho_minus = 0.0; }), "phys");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.visc.epsilon = -1.0; }), "visc");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.stepper.abs_tol = 0.0; }), "stepper");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.t_end = 0.0; }), "time.t_end");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.snapshot_times = {0.5}; }), "time.snapshot_times");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.seeds.clear(); }), "seeds");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.outputs = {"movie"}; }), "outputs");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.init.h[0].k = 17; }), "init.h.0.k");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.init.z2 = {sine(1, 1.0)}; }), "init.z2");
  EXPECT_EQ(bad([](ExperimentConfig& c) { c.init.omega0_integral = 1.0; }),
            "init.omega0_integral");
}

TEST(Run, DeterministicForFixedSeed) {
  ExperimentConfig c = small_h_run();
  FieldTerm r;
  r.kind = FieldTerm::Kind::random;
  r.n_modes = 8;
  r.l2 = 0.01;
  c.init.h.push_back(r);
  const ExperimentResult a = run(c, 5);
  const ExperimentResult b = run(c, 5);
  const ExperimentResult other = run(c, 6);
  ASSERT_EQ(a.status, Termination::completed);
  EXPECT_EQ(a.states, b.states);
  EXPECT_NE(a.states.back(), other.states.back());
}

TEST(Run, RecordsSamplesAndSnapshots) {
  const ExperimentResult r = run(small_h_run());
  ASSERT_EQ(r.status, Termination::completed) << r.message;
  EXPECT_EQ(r.samples.size(), r.config.sample_times().size());
  ASSERT_EQ(r.snapshots.size(), 1u);
  EXPECT_EQ(r.snapshots[0].t, 0.05);
  EXPECT_EQ(r.snapshots[0].x.size(), 32u);
  EXPECT_TRUE(r.snapshots[0].y.empty());
  EXPECT_EQ(r.snapshots[0].spectrum.size(), 17u);
  EXPECT_TRUE(r.samples[0].energy.has_value());
  EXPECT_EQ(r.samples[0].width, 0.0);
  EXPECT_NEAR(r.samples[0].linf, 0.1, 1e-15);
}

TEST(Run, ZModelZeroAtwoodInviscidKeepsVorticity) {
  ExperimentConfig c = preset("sim7");
  c.visc.epsilon = 0.0;
  c.t_end = 0.1;
  c.snapshot_times = {0.0};
  const ExperimentResult r = run(c);
  ASSERT_EQ(r.status, Termination::completed) << r.message;
  const std::size_t n = c.grid_n;
  for (std::size_t j = 0; j < n; ++j)
    EXPECT_EQ(r.states.back()[2 * n + j], r.states.front()[2 * n + j]);
  EXPECT_FALSE(r.samples[0].energy.has_value());
  EXPECT_EQ(r.snapshots[0].y.size(), n);
}

TEST(Run, DegenerateParameterizationIsReported) {
  ExperimentConfig c;
  c.model = ModelKind::z_system;
  c.grid_n = 32;
  c.init.dz1 = {sine(1, -1.0)};  // z1 = alpha - sin alpha, stationary point at 0
  c.t_end = 0.01;
  const ExperimentResult r = run(c);
  EXPECT_EQ(r.status, Termination::degeneracy);
  EXPECT_NE(r.message.find("degenerate"), std::string::npos);
}

TEST(Run, StepSizeUnderflowIsBlowup) {
  ExperimentConfig c = preset("sim3");
  c.grid_n = 64;
  c.stepper.abs_tol = c.stepper.rel_tol = 1e-14;
  c.stepper.dt_init = c.stepper.dt_min = 1e-3;
  const ExperimentResult r = run(c);
  EXPECT_EQ(r.status, Termination::blowup);
  EXPECT_NE(r.message.find("underflow"), std::string::npos);
  EXPECT_LT(r.samples.size(), c.sample_times().size());
}

TEST(Run, GrowthFitAttached) {
  ExperimentConfig c = small_h_run();
  c.growth = GrowthSpec{0.06, 0.05};
  const ExperimentResult r = run(c);
  ASSERT_TRUE(r.growth.has_value());
  EXPECT_EQ(r.growth->samples, 4u);  // 0, 0.02, 0.04, 0.05
}

TEST(Ensemble, SingleSeedMatchesRun) {
  ExperimentConfig c = small_h_run();
  c.seeds = {3};
  const EnsembleResult e = run_ensemble(c, 1);
  const ExperimentResult r = run(c, 3);
  ASSERT_EQ(e.runs.size(), 1u);
  EXPECT_EQ(e.runs[0].states, r.states);
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    EXPECT_EQ(e.aggregate.count[i], 1u);
    EXPECT_EQ(e.aggregate.width_mean[i], r.samples[i].width);
    EXPECT_EQ(e.aggregate.width_min[i], e.aggregate.width_max[i]);
  }
}

TEST(Ensemble, ThreadCountDoesNotChangeResults) {
  ExperimentConfig c = small_h_run();
  FieldTerm r;
  r.kind = FieldTerm::Kind::random;
  r.n_modes = 6;
  r.l2 = 0.01;
  c.init.h = {r};
  c.seeds = {0, 1, 2, 3, 4};
  const EnsembleResult serial = run_ensemble(c, 1);
  const EnsembleResult parallel = run_ensemble(c, 4);
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    EXPECT_EQ(serial.runs[i].seed, c.seeds[i]);
    EXPECT_EQ(serial.runs[i].states, parallel.runs[i].states);
  }
  EXPECT_EQ(serial.aggregate.width_mean, parallel.aggregate.width_mean);
}

TEST(Ensemble, AggregateSkipsFailedRuns) {
  ExperimentResult ok, failed;
  ok.samples = {{0.0, 1.0, 0.0}, {0.1, 2.0, 0.5}};
  failed.status = Termination::blowup;
  failed.samples = {{0.0, 7.0, 7.0}};
  ExperimentResult ok2 = ok;
  ok2.samples[1].width = 1.5;
  const EnsembleAggregate a = aggregate({ok, failed, ok2});
  ASSERT_EQ(a.t.size(), 2u);
  EXPECT_EQ(a.count[0], 2u);
  EXPECT_EQ(a.linf_max[0], 1.0);
  EXPECT_EQ(a.width_mean[1], 1.0);
  EXPECT_EQ(a.width_min[1], 0.5);
  EXPECT_EQ(a.width_max[1], 1.5);
}

TEST(Presets, CatalogIsValid) {
  const auto names = preset_names();
  EXPECT_EQ(names.size(), 12u);
  for (const auto& n : names) {
    const ExperimentConfig c = preset(n);
    EXPECT_EQ(c.name, n);
    EXPECT_NO_THROW(c.validate()) << n;
  }
  EXPECT_THROW(preset("nope"), ConfigError);
}

TEST(Presets, PhysicalParameters) {
  EXPECT_NEAR(preset("sim1").phys.atwood(), -0.2, 1e-15);
  EXPECT_NEAR(preset("sim2").phys.atwood(), (1.23 - 1027.0) / (1.23 + 1027.0), 1e-15);
  EXPECT_NEAR(preset("sim3").phys.atwood(), 9.0 / 11.0, 1e-15);
  EXPECT_EQ(preset("sim4").phys.atwood(), -1.0);
  const ExperimentConfig rig = preset("sim5_h");
  EXPECT_NEAR(rig.phys.atwood(), -1.23 / 2.55, 1e-15);
  EXPECT_LT(rig.phys.g, 0.0);
  EXPECT_NEAR(rig.phys.g, -9.8 * 2 * M_PI / 0.3, 1e-12);
  EXPECT_EQ(rig.seeds.size(), 10u);
  EXPECT_EQ(preset("sim5_z").grid_n, 512);
  EXPECT_EQ(preset("sim7").phys.atwood(), 0.0);
}

TEST(Presets, Sim2AmplitudeHistoryMatchesReferenceValues) {
  // Reference: amplitude 0.7 at t=0.2, 4.3 at t=0.4, decaying afterwards.
  ExperimentConfig c = preset("sim2");
  c.t_end = 0.6;
  c.snapshot_times = {};
  const ExperimentResult r = run(c);
  ASSERT_EQ(r.status, Termination::completed) << r.message;
  auto linf_at = [&](double t) {
    for (const auto& s : r.samples)
      if (std::abs(s.t - t) < 1e-9) return s.linf;
    ADD_FAILURE() << "no sample at " << t;
    return 0.0;
  };
  EXPECT_NEAR(linf_at(0.2), 0.7, 0.05);
  EXPECT_NEAR(linf_at(0.4), 4.3, 0.1);
  EXPECT_LT(linf_at(0.6), linf_at(0.4));
}
