#include "rtmix/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <thread>

#include "rtmix/errors.hpp"

namespace rtmix::experiments {

using spectral::PeriodicGrid;
using spectral::RealField;

namespace {

RealField slice(const PeriodicGrid& grid, std::span<const double> y, int component) {
  const auto n = static_cast<std::size_t>(grid.size());
  auto part = y.subspan(component * n, n);
  return RealField(grid, std::vector<double>(part.begin(), part.end()));
}

void store(const RealField& f, std::span<double> out, int component) {
  const auto v = f.values();
  std::copy(v.begin(), v.end(), out.begin() + component * static_cast<std::ptrdiff_t>(v.size()));
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("init", "cannot open sample file '" + path + "'");
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw ConfigError("init", "malformed number in sample file '" + path + "'");
  return v;
}

bool is_power_of_two(int n) { return n >= 4 && (n & (n - 1)) == 0; }

void validate_terms(const FieldSpec& spec, const std::string& path, int n) {
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const FieldTerm& term = spec[i];
    const std::string where = path + "." + std::to_string(i);
    switch (term.kind) {
      case FieldTerm::Kind::mode:
        if (std::abs(term.k) > n / 2) throw ConfigError(where + ".k", "exceeds N/2");
        break;
      case FieldTerm::Kind::random:
        if (term.n_modes < 1 || term.n_modes > n / 2)
          throw ConfigError(where + ".n", "must lie in [1, N/2]");
        if (!(term.l2 > 0.0)) throw ConfigError(where + ".l2", "must be positive");
        break;
      case FieldTerm::Kind::tilted:
        if (!(std::abs(term.theta_deg) < 90.0))
          throw ConfigError(where + ".theta_deg", "must lie in (-90, 90)");
        break;
      case FieldTerm::Kind::samples:
        if (term.file.empty() && term.values.size() != static_cast<std::size_t>(n))
          throw ConfigError(where + ".values", "need exactly N samples");
        break;
      case FieldTerm::Kind::constant:
        break;
    }
  }
}

template <class F>
void guard(const std::string& field, F&& check) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

// Collects diagnostics at each sample time as the integrator reaches it.
class Recorder {
 public:
  Recorder(const ExperimentConfig& config, std::span<const double> y0, ExperimentResult& out)
      : config_(config), grid_(config.grid_n), out_(out) {
    for (double s : config.snapshot_times) snapshot_times_.push_back(s);
    if (config.model == ModelKind::z_system) {
      reference_ = slice(grid_, y0, 1);
    } else {
      reference_ = slice(grid_, y0, 0);
      const RealField ht0 = velocity(y0);
      h0_mean_ = reference_->mean();
      h1_mean_ = ht0.mean();
    }
  }

  void operator()(double t, std::span<const double> y) {
    out_.states.emplace_back(y.begin(), y.end());
    SampleRecord rec;
    rec.t = t;
    if (config_.model == ModelKind::z_system) {
      const RealField dz1 = slice(grid_, y, 0);
      const RealField z2 = slice(grid_, y, 1);
      const auto aw = diagnostics::amplitude_and_width(z2, *reference_);
      rec.linf = aw.linf;
      rec.width = aw.width;
      if (is_snapshot(t)) {
        Snapshot snap;
        snap.t = t;
        snap.alpha = grid_.nodes();
        snap.x = snap.alpha;
        for (std::size_t j = 0; j < snap.x.size(); ++j) snap.x[j] += dz1[j];
        snap.y.assign(z2.values().begin(), z2.values().end());
        snap.spectrum = diagnostics::displacement_spectrum(dz1, z2);
        out_.snapshots.push_back(std::move(snap));
      }
    } else {
      const RealField h = slice(grid_, y, 0);
      const RealField ht = velocity(y);
      const auto aw = diagnostics::amplitude_and_width(h, *reference_);
      rec.linf = aw.linf;
      rec.width = aw.width;
      rec.energy = diagnostics::energy_record(h, ht, config_.phys, t);
      rec.lambda_min = diagnostics::lambda_min(ht, config_.phys.atwood());
      rec.gap = diagnostics::asymptotic_gap(h, ht, h0_mean_, h1_mean_, t);
      if (is_snapshot(t)) {
        Snapshot snap;
        snap.t = t;
        snap.alpha = grid_.nodes();
        snap.x.assign(h.values().begin(), h.values().end());
        snap.spectrum = rec.energy->spectrum;
        out_.snapshots.push_back(std::move(snap));
      }
    }
    out_.samples.push_back(std::move(rec));
  }

 private:
  RealField velocity(std::span<const double> y) const {
    if (config_.model == ModelKind::h_wave) return slice(grid_, y, 1);
    return spectral::hilbert(slice(grid_, y, 1)) * 0.5;
  }

  bool is_snapshot(double t) const {
    return std::find(snapshot_times_.begin(), snapshot_times_.end(), t) != snapshot_times_.end();
  }

  const ExperimentConfig& config_;
  PeriodicGrid grid_;
  ExperimentResult& out_;
  std::vector<double> snapshot_times_;
  std::optional<RealField> reference_;
  double h0_mean_ = 0.0;
  double h1_mean_ = 0.0;
};

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blowup: return "blowup";
    case Termination::degeneracy: return "degeneracy";
  }
  return "unknown";
}

const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::h_system: return "h_system";
    case ModelKind::h_wave: return "h_wave";
    case ModelKind::h_linear: return "h_linear";
    case ModelKind::z_system: return "z_system";
  }
  return "unknown";
}

std::vector<double> ExperimentConfig::sample_times() const {
  std::vector<double> times(snapshot_times.begin(), snapshot_times.end());
  const double tol = 1e-9 * std::max(1.0, t_end);
  auto near_snapshot = [&](double t) {
    return std::any_of(snapshot_times.begin(), snapshot_times.end(),
                       [&](double s) { return std::abs(s - t) <= tol; });
  };
  const auto count = static_cast<long>(std::floor(t_end / sample_interval + 1e-9));
  for (long i = 0; i <= count; ++i) {
    const double t = std::min(static_cast<double>(i) * sample_interval, t_end);
    if (!near_snapshot(t)) times.push_back(t);
  }
  if (!near_snapshot(t_end)) times.push_back(t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [tol](double a, double b) { return std::abs(a - b) <= tol; }),
              times.end());
  return times;
}

bool ExperimentConfig::wants(const std::string& output) const {
  return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

void ExperimentConfig::validate() const {
  if (!is_power_of_two(grid_n)) throw ConfigError("grid.n", "must be a power of two >= 4");
  guard("phys", [&] { phys.validate(); });
  guard("visc", [&] { visc.validate(); });
  guard("stepper", [&] { stepper.validate(); });
  if (!(t_end > 0.0)) throw ConfigError("time.t_end", "must be positive");
  if (!(sample_interval > 0.0)) throw ConfigError("time.sample_interval", "must be positive");
  for (double s : snapshot_times)
    if (!(s >= 0.0 && s <= t_end))
      throw ConfigError("time.snapshot_times", "entries must lie in [0, t_end]");
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
  for (const auto& o : outputs)
    if (o != "spectrum")
      throw ConfigError("outputs", "unknown output '" + o + "'");
  if (growth && !(growth->window > 0.0)) throw ConfigError("growth.window", "must be positive");

  auto forbid = [&](const FieldSpec& f, const char* name) {
    if (!f.empty())
      throw ConfigError(std::string("init.") + name,
                        std::string("not used by model ") + to_string(model));
  };
  switch (model) {
    case ModelKind::h_system:
    case ModelKind::h_linear:
      forbid(init.ht, "ht");
      forbid(init.dz1, "dz1");
      forbid(init.z2, "z2");
      break;
    case ModelKind::h_wave:
      forbid(init.omega, "omega");
      forbid(init.dz1, "dz1");
      forbid(init.z2, "z2");
      break;
    case ModelKind::z_system:
      forbid(init.h, "h");
      forbid(init.ht, "ht");
      break;
  }
  if (model != ModelKind::h_wave && init.omega0_integral != 0.0)
    throw ConfigError("init.omega0_integral", "only meaningful for h_wave");
  validate_terms(init.h, "init.h", grid_n);
  validate_terms(init.omega, "init.omega", grid_n);
  validate_terms(init.ht, "init.ht", grid_n);
  validate_terms(init.dz1, "init.dz1", grid_n);
  validate_terms(init.z2, "init.z2", grid_n);
}

RealField build_field(const PeriodicGrid& grid, const FieldSpec& spec, std::uint64_t seed) {
  RealField f(grid);
  for (const FieldTerm& term : spec) {
    switch (term.kind) {
      case FieldTerm::Kind::mode: {
        RealField m = initcond::sine_mode(grid, term.k, term.amp, term.phase);
        f += term.hilbert ? spectral::hilbert(m) : m;
        break;
      }
      case FieldTerm::Kind::constant:
        for (std::size_t j = 0; j < f.size(); ++j) f[j] += term.value;
        break;
      case FieldTerm::Kind::random:
        f += initcond::random_trig(grid, {term.n_modes, term.l2, seed, term.draw});
        break;
      case FieldTerm::Kind::tilted:
        f += initcond::tilted_interface(grid, term.theta_deg * std::numbers::pi / 180.0);
        break;
      case FieldTerm::Kind::samples: {
        std::vector<double> v = term.file.empty() ? term.values : read_samples(term.file);
        if (v.size() != static_cast<std::size_t>(grid.size()))
          throw ConfigError("init", "sample count does not match grid size");
        f += RealField(grid, std::move(v));
        break;
      }
    }
  }
  return f;
}

std::vector<double> initial_state(const ExperimentConfig& config, std::uint64_t seed) {
  const PeriodicGrid grid(config.grid_n);
  std::vector<RealField> parts;
  switch (config.model) {
    case ModelKind::h_system:
    case ModelKind::h_linear:
      parts = {build_field(grid, config.init.h, seed), build_field(grid, config.init.omega, seed)};
      break;
    case ModelKind::h_wave:
      parts = {build_field(grid, config.init.h, seed), build_field(grid, config.init.ht, seed)};
      break;
    case ModelKind::z_system:
      parts = {build_field(grid, config.init.dz1, seed), build_field(grid, config.init.z2, seed),
               build_field(grid, config.init.omega, seed)};
      break;
  }
  std::vector<double> y(parts.size() * grid.size());
  for (std::size_t c = 0; c < parts.size(); ++c) store(parts[c], y, static_cast<int>(c));
  return y;
}

ExperimentResult run(const ExperimentConfig& config) {
  return run(config, config.seeds.empty() ? 0 : config.seeds.front());
}

ExperimentResult run(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.seed = seed;

  const PeriodicGrid grid(config.grid_n);
  std::vector<double> y = initial_state(config, seed);
  const double omega0_integral =
      config.model == ModelKind::h_wave
          ? config.init.omega0_integral
          : (config.model == ModelKind::h_system ? spectral::integrate(slice(grid, y, 1)) : 0.0);

  RhsFunction rhs;
  switch (config.model) {
    case ModelKind::h_system:
      rhs = [&](double, std::span<const double> s, std::span<double> d) {
        const models::HState st{slice(grid, s, 0), slice(grid, s, 1), omega0_integral};
        const auto r = models::h_rhs(st, config.phys, config.visc, config.options);
        store(r.dh, d, 0);
        store(r.domega, d, 1);
      };
      break;
    case ModelKind::h_linear:
      rhs = [&](double, std::span<const double> s, std::span<double> d) {
        const models::HState st{slice(grid, s, 0), slice(grid, s, 1), 0.0};
        const auto r = models::linear_rhs(st, config.phys);
        store(r.dh, d, 0);
        store(r.domega, d, 1);
      };
      break;
    case ModelKind::h_wave:
      rhs = [&](double, std::span<const double> s, std::span<double> d) {
        const RealField ht = slice(grid, s, 1);
        store(ht, d, 0);
        store(models::h_wave_rhs(slice(grid, s, 0), ht, config.phys, config.visc, omega0_integral,
                                 config.options),
              d, 1);
      };
      break;
    case ModelKind::z_system:
      rhs = [&](double, std::span<const double> s, std::span<double> d) {
        const models::ZState st{slice(grid, s, 0), slice(grid, s, 1), slice(grid, s, 2)};
        const auto r = models::z_rhs(st, config.phys, config.visc);
        store(r.ddz1, d, 0);
        store(r.dz2, d, 1);
        store(r.domega, d, 2);
      };
      break;
  }

  Recorder recorder(config, y, result);
  const std::vector<double> samples = config.sample_times();
  try {
    result.stats = integrate(rhs, y, 0.0, config.t_end, config.stepper, samples,
                             [&](double t, std::span<const double> s) { recorder(t, s); });
  } catch (const StepSizeUnderflow& e) {
    result.status = Termination::blowup;
    result.message = e.what();
  } catch (const NonFiniteState& e) {
    result.status = Termination::blowup;
    result.message = e.what();
  } catch (const DegenerateParameterization& e) {
    result.status = Termination::degeneracy;
    result.message = e.what();
  }

  if (config.growth) {
    std::vector<double> t, w;
    for (const auto& s : result.samples) {
      t.push_back(s.t);
      w.push_back(s.width);
    }
    result.growth = diagnostics::growth_deviation(t, w, config.phys.atwood(), config.phys.g,
                                                  config.growth->delta, config.growth->window);
  }
  return result;
}

EnsembleAggregate aggregate(const std::vector<ExperimentResult>& runs) {
  EnsembleAggregate agg;
  std::size_t longest = 0;
  const ExperimentResult* ref = nullptr;
  for (const auto& r : runs)
    if (r.status == Termination::completed && r.samples.size() > longest) {
      longest = r.samples.size();
      ref = &r;
    }
  for (std::size_t i = 0; i < longest; ++i) {
    double wsum = 0.0, lsum = 0.0;
    double wmin = INFINITY, wmax = -INFINITY, lmin = INFINITY, lmax = -INFINITY;
    std::size_t count = 0;
    for (const auto& r : runs) {
      if (r.status != Termination::completed || i >= r.samples.size()) continue;
      const auto& s = r.samples[i];
      wsum += s.width;
      lsum += s.linf;
      wmin = std::min(wmin, s.width);
      wmax = std::max(wmax, s.width);
      lmin = std::min(lmin, s.linf);
      lmax = std::max(lmax, s.linf);
      ++count;
    }
    agg.t.push_back(ref->samples[i].t);
    agg.count.push_back(count);
    agg.width_mean.push_back(wsum / count);
    agg.width_min.push_back(wmin);
    agg.width_max.push_back(wmax);
    agg.linf_mean.push_back(lsum / count);
    agg.linf_min.push_back(lmin);
    agg.linf_max.push_back(lmax);
  }
  return agg;
}

EnsembleResult run_ensemble(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  EnsembleResult out;
  out.runs.resize(config.seeds.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.seeds.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++)
      out.runs[i] = run(config, config.seeds[i]);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  out.aggregate = aggregate(out.runs);
  return out;
}

}  // namespace rtmix::experiments
