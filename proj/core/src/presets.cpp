#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "rtmix/errors.hpp"
#include "rtmix/experiments.hpp"

namespace rtmix::experiments {

namespace {

using initcond::Phase;

FieldTerm mode(int k, double amp, Phase phase, bool hilbert = false) {
  FieldTerm t;
  t.kind = FieldTerm::Kind::mode;
  t.k = k;
  t.amp = amp;
  t.phase = phase;
  t.hilbert = hilbert;
  return t;
}

FieldTerm constant(double value) {
  FieldTerm t;
  t.kind = FieldTerm::Kind::constant;
  t.value = value;
  return t;
}

FieldTerm random(int n_modes, double l2) {
  FieldTerm t;
  t.kind = FieldTerm::Kind::random;
  t.n_modes = n_modes;
  t.l2 = l2;
  return t;
}

FieldTerm tilted(double theta_deg) {
  FieldTerm t;
  t.kind = FieldTerm::Kind::tilted;
  t.theta_deg = theta_deg;
  return t;
}

// h = sin 3a, w = 2 H sin 2a, shared by the first three h-model scenarios.
ExperimentConfig order_one(const std::string& name, double rho_plus, double rho_minus,
                           double epsilon, double t_end) {
  ExperimentConfig c;
  c.name = name;
  c.model = ModelKind::h_system;
  c.grid_n = 128;
  c.phys = {9.8, 0.0, rho_plus, rho_minus};
  c.visc = {epsilon, 3.0};
  c.init.h = {mode(3, 1.0, Phase::sin)};
  c.init.omega = {mode(2, 2.0, Phase::sin, true)};
  c.t_end = t_end;
  c.sample_interval = 0.01;
  return c;
}

// Hexane over a sodium iodide solution, driven upwards by the rocket rig.
models::PhysParams rocket_rig(double sigma = 0.0) { return {kRocketRigG, sigma, 0.66, 1.89}; }

ExperimentConfig sim1() {
  auto c = order_one("sim1", 1.0, 1.5, 0.01, 2.64);
  c.snapshot_times = {1.95, 2.4};
  return c;
}

ExperimentConfig sim2() {
  auto c = order_one("sim2", 1.23, 1027.0, 0.05, 0.77);
  c.snapshot_times = {0.0, 0.2, 0.45, 0.7};
  c.outputs = {"spectrum"};
  return c;
}

ExperimentConfig sim2_linear() {
  auto c = sim2();
  c.name = "sim2_linear";
  c.model = ModelKind::h_linear;
  return c;
}

ExperimentConfig sim3() {
  auto c = order_one("sim3", 10.0, 1.0, 0.05, 0.22);
  c.snapshot_times = {0.0, 0.05, 0.1, 0.15, 0.2};
  return c;
}

ExperimentConfig sim4() {
  ExperimentConfig c;
  c.name = "sim4";
  c.model = ModelKind::h_wave;
  c.grid_n = 128;
  c.phys = {9.8, 0.0, 0.0, 1.0};
  c.visc = {0.0, 2.0};
  c.init.h = {mode(1, 0.1, Phase::cos)};
  c.init.ht = {constant(-1.0), mode(1, 0.1, Phase::sin)};
  c.t_end = 20.0;
  c.sample_interval = 0.05;
  c.snapshot_times = {0.0, 1.0, 5.0, 20.0};
  return c;
}

ExperimentConfig sim5_h() {
  ExperimentConfig c;
  c.name = "sim5_h";
  c.model = ModelKind::h_system;
  c.grid_n = 128;
  c.phys = rocket_rig();
  c.visc = {0.05, 2.0};
  c.init.h = {random(50, std::numbers::pi / 100.0)};
  c.t_end = 0.165;
  c.sample_interval = 0.001;
  c.snapshot_times = {0.0, 0.02, 0.04, 0.06, 0.08};
  c.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  c.growth = GrowthSpec{0.06, 0.15};
  return c;
}

ExperimentConfig sim5_h_sigma() {
  auto c = sim5_h();
  c.name = "sim5_h_sigma";
  c.phys = rocket_rig(0.005);
  c.visc = {0.0, 2.0};
  c.init.h = {random(30, std::numbers::pi / 1000.0)};
  return c;
}

ExperimentConfig sim5_z() {
  ExperimentConfig c;
  c.name = "sim5_z";
  c.model = ModelKind::z_system;
  c.grid_n = 512;
  c.phys = rocket_rig();
  c.visc = {0.01, 2.0};
  c.init.z2 = {random(30, std::numbers::pi / 1000.0)};
  c.t_end = 0.167;
  c.sample_interval = 0.001;
  c.snapshot_times = {0.0, 0.049, 0.099, 0.129, 0.149};
  c.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  c.growth = GrowthSpec{0.06, 0.15};
  return c;
}

// The h-model run compared against sim5_z: same draw, five times the viscosity.
ExperimentConfig sim5_z_hmatch() {
  auto c = sim5_z();
  c.name = "sim5_z_hmatch";
  c.model = ModelKind::h_system;
  c.visc = {0.05, 2.0};
  c.init.h = c.init.z2;
  c.init.z2.clear();
  c.t_end = 0.165;
  c.snapshot_times = {0.0, 0.099, 0.129, 0.149};
  return c;
}

ExperimentConfig sim6_h() {
  ExperimentConfig c;
  c.name = "sim6_h";
  c.model = ModelKind::h_system;
  c.grid_n = 512;
  c.phys = rocket_rig();
  c.visc = {0.25, 2.0};
  c.init.h = {tilted(5.7), random(30, std::numbers::pi / 1000.0)};
  c.t_end = 0.315;
  c.sample_interval = 0.001;
  c.snapshot_times = {0.0, 0.069, 0.139, 0.172, 0.209, 0.286};
  return c;
}

ExperimentConfig sim6_z() {
  auto c = sim6_h();
  c.name = "sim6_z";
  c.model = ModelKind::z_system;
  c.visc = {0.05, 2.0};
  c.init.z2 = c.init.h;
  c.init.h.clear();
  c.snapshot_times = {0.0, 0.069, 0.139, 0.172, 0.209, 0.22, 0.286};
  c.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  return c;
}

ExperimentConfig sim7() {
  ExperimentConfig c;
  c.name = "sim7";
  c.model = ModelKind::z_system;
  c.grid_n = 256;
  c.phys = {9.8, 0.0, 1.0, 1.0};
  c.visc = {0.01, 2.0};
  c.init.dz1 = {mode(1, -1.0, Phase::sin)};
  c.init.z2 = {mode(1, 0.5, Phase::sin)};
  c.init.omega = {mode(1, 10.0, Phase::cos)};
  c.t_end = 0.66;
  c.sample_interval = 0.01;
  c.snapshot_times = {0.0, 0.2, 0.4, 0.6};
  c.outputs = {"spectrum"};
  return c;
}

const std::map<std::string, std::function<ExperimentConfig()>>& catalog() {
  static const std::map<std::string, std::function<ExperimentConfig()>> table{
      {"sim1", sim1},     {"sim2", sim2},           {"sim2_linear", sim2_linear},
      {"sim3", sim3},     {"sim4", sim4},           {"sim5_h", sim5_h},
      {"sim5_h_sigma", sim5_h_sigma},               {"sim5_z", sim5_z},
      {"sim5_z_hmatch", sim5_z_hmatch},             {"sim6_h", sim6_h},
      {"sim6_z", sim6_z}, {"sim7", sim7},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : catalog()) names.push_back(name);
  return names;
}

ExperimentConfig preset(const std::string& name) {
  const auto& table = catalog();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("preset", "unknown preset '" + name + "'");
  return it->second();
}

}  // namespace rtmix::experiments
