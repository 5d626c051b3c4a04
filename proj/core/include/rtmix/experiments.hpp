#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtmix/diagnostics.hpp"
#include "rtmix/initcond.hpp"
#include "rtmix/models.hpp"
#include "rtmix/timestepper.hpp"

namespace rtmix::experiments {

enum class ModelKind { h_system, h_wave, h_linear, z_system };

/// One additive term of an initial field.
struct FieldTerm {
  enum class Kind { mode, constant, random, tilted, samples };
  Kind kind = Kind::mode;

  // mode: amp * sin/cos(k alpha), optionally passed through H
  int k = 1;
  double amp = 1.0;
  initcond::Phase phase = initcond::Phase::sin;
  bool hilbert = false;

  // constant
  double value = 0.0;

  // random: seeded trigonometric polynomial with fixed L2 norm
  int n_modes = 1;
  double l2 = 1.0;
  std::uint64_t draw = 0;

  // tilted: piecewise-linear interface, angle in degrees
  double theta_deg = 0.0;

  // samples: tabulated nodal values, inline or one number per line in `file`
  std::vector<double> values;
  std::string file;

  friend bool operator==(const FieldTerm&, const FieldTerm&) = default;
};

/// A field is the sum of its terms; an empty list is the zero field.
using FieldSpec = std::vector<FieldTerm>;

struct InitSpec {
  FieldSpec h;
  FieldSpec omega;
  FieldSpec ht;
  FieldSpec dz1;
  FieldSpec z2;
  /// <w0> for the wave form, which carries no vorticity field.
  double omega0_integral = 0.0;

  friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

struct GrowthSpec {
  double delta = 0.06;
  double window = 0.15;

  friend bool operator==(const GrowthSpec&, const GrowthSpec&) = default;
};

struct ExperimentConfig {
  std::string name;
  ModelKind model = ModelKind::h_system;
  int grid_n = 128;
  models::PhysParams phys;
  models::ViscosityConfig visc;
  models::ModelOptions options;
  InitSpec init;
  double t_end = 1.0;
  double sample_interval = 0.01;
  std::vector<double> snapshot_times;
  StepController stepper;
  std::vector<std::uint64_t> seeds{0};
  /// Optional extras; "spectrum" adds per-snapshot energy spectra.
  std::vector<std::string> outputs;
  std::optional<GrowthSpec> growth;

  /// Uniform grid of `sample_interval` merged with the snapshot times.
  std::vector<double> sample_times() const;
  bool wants(const std::string& output) const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

enum class Termination { completed, blowup, degeneracy };

const char* to_string(Termination t);
const char* to_string(ModelKind m);

struct SampleRecord {
  double t = 0.0;
  double linf = 0.0;
  double width = 0.0;
  // Graph-model diagnostics; absent for the z-model.
  std::optional<diagnostics::EnergyRecord> energy;
  std::optional<double> lambda_min;
  std::optional<diagnostics::AsymptoticGap> gap;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> alpha;
  std::vector<double> x;  // h for graph models, z1 = alpha + dz1 for the z-model
  std::vector<double> y;  // z2 for the z-model, empty otherwise
  std::vector<double> spectrum;  // k = 0..N/2
};

struct ExperimentResult {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  std::vector<SampleRecord> samples;
  /// Packed state at each sample: [h|w], [h|h_t] or [dz1|z2|w].
  std::vector<std::vector<double>> states;
  std::vector<Snapshot> snapshots;
  Termination status = Termination::completed;
  std::string message;
  StepStats stats;
  std::optional<diagnostics::GrowthFit> growth;
};

/// Initial packed state for `config` and ensemble member `seed`.
std::vector<double> initial_state(const ExperimentConfig& config, std::uint64_t seed);

/// Evaluates one field specification on `grid`.
spectral::RealField build_field(const spectral::PeriodicGrid& grid, const FieldSpec& spec,
                                std::uint64_t seed);

/// Integrates the configured model for one seed (the first configured seed
/// unless given). Model and stepper failures become a termination status.
ExperimentResult run(const ExperimentConfig& config);
ExperimentResult run(const ExperimentConfig& config, std::uint64_t seed);

struct EnsembleAggregate {
  std::vector<double> t;
  std::vector<std::size_t> count;
  std::vector<double> width_mean, width_min, width_max;
  std::vector<double> linf_mean, linf_min, linf_max;
};

struct EnsembleResult {
  std::vector<ExperimentResult> runs;  // in seed order
  EnsembleAggregate aggregate;
};

/// One run per configured seed, concurrently when `threads` > 1 (0 picks the
/// hardware concurrency). Only completed runs enter the aggregate.
EnsembleResult run_ensemble(const ExperimentConfig& config, unsigned threads = 0);

EnsembleAggregate aggregate(const std::vector<ExperimentResult>& runs);

/// Built-in scenario catalog.
std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
ExperimentConfig preset(const std::string& name);

/// Rocket-rig acceleration: 9.8 m/s^2 in units where 2 pi / 0.3 L = 1 m, acting upwards.
inline constexpr double kRocketRigG = -9.8 * 2.0 * 3.14159265358979323846 / 0.3;

}  // namespace rtmix::experiments
