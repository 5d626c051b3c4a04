#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

#include "rtmix/config.hpp"
#include "rtmix/errors.hpp"
#include "rtmix/version.hpp"

namespace rtmix::cli {

using experiments::ExperimentConfig;
using experiments::ExperimentResult;
using experiments::ModelKind;
using experiments::Termination;

namespace {

constexpr int kBadConfig = 1;
constexpr int kRuntimeFailure = 2;

ExperimentConfig load_config(const CommonOptions& opt) {
  return config::with_overrides(config::resolve(opt.target), opt.overrides);
}

// Maps exceptions to exit statuses; `body` returns the status on success.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "rtmix: config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "rtmix: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

void report(const ExperimentResult& r) {
  std::cout << r.config.name << " seed " << r.seed << ": " << experiments::to_string(r.status);
  if (!r.message.empty()) std::cout << " (" << r.message << ")";
  std::cout << ", " << r.samples.size() << " samples";
  if (r.status == Termination::completed) std::cout << ", " << r.stats.accepted << " steps";
  if (r.growth) std::cout << ", growth max deviation " << io::format_number(r.growth->max_deviation);
  std::cout << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-')
      throw ConfigError("seeds", "expected a..b or a single seed, got '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_one(text)};
  const std::uint64_t a = parse_one(text.substr(0, dots));
  const std::uint64_t b = parse_one(text.substr(dots + 2));
  if (b < a) throw ConfigError("seeds", "empty range '" + text + "'");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = a;; ++s) {
    out.push_back(s);
    if (s == b) break;
  }
  return out;
}

int run_command(const CommonOptions& opt, std::optional<std::uint64_t> seed) {
  return guarded([&] {
    ExperimentConfig c = load_config(opt);
    if (seed) c.seeds = {*seed};
    c.validate();
    const auto start = std::chrono::steady_clock::now();
    const ExperimentResult r = experiments::run(c, c.seeds.front());

    io::RunManifest m;
    m.version = kVersion;
    m.command = opt.command_line;
    m.config_json = config::to_json(c);
    m.files = io::write_result(r, opt.out_dir, "", opt.format);
    m.runs = {&r};
    m.wall_seconds = seconds_since(start);
    io::write_manifest(m, opt.out_dir);

    report(r);
    return r.status == Termination::degeneracy ? kRuntimeFailure : 0;
  });
}

int ensemble_command(const CommonOptions& opt, const std::string& seed_range, unsigned threads) {
  return guarded([&] {
    ExperimentConfig c = load_config(opt);
    if (!seed_range.empty()) c.seeds = parse_seed_range(seed_range);
    c.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto ens = experiments::run_ensemble(c, threads);

    io::RunManifest m;
    m.version = kVersion;
    m.command = opt.command_line;
    m.config_json = config::to_json(c);
    bool degenerate = false;
    for (const auto& r : ens.runs) {
      auto files = io::write_result(r, opt.out_dir, "seed_" + std::to_string(r.seed), opt.format);
      m.files.insert(m.files.end(), files.begin(), files.end());
      m.runs.push_back(&r);
      degenerate = degenerate || r.status == Termination::degeneracy;
      report(r);
    }
    m.files.push_back(io::write_file(opt.out_dir, "ensemble.csv", io::ensemble_csv(ens.aggregate)));
    m.wall_seconds = seconds_since(start);
    io::write_manifest(m, opt.out_dir);
    return degenerate ? kRuntimeFailure : 0;
  });
}

int check_command(const CommonOptions& opt) {
  return guarded([&] {
    const ExperimentConfig c = load_config(opt);
    if (c.model == ModelKind::z_system)
      throw ConfigError("model", "check needs a graph model (h_system, h_wave or h_linear)");
    const spectral::PeriodicGrid grid(c.grid_n);
    const auto y = experiments::initial_state(c, c.seeds.front());
    const auto n = static_cast<std::size_t>(c.grid_n);
    const spectral::RealField h0(grid, {y.begin(), y.begin() + n});
    spectral::RealField second(grid, {y.begin() + n, y.end()});
    const spectral::RealField h1 =
        c.model == ModelKind::h_wave ? second : spectral::hilbert(second) * 0.5;

    const auto rep = diagnostics::stability_report(h0, h1, c.phys);
    char line[256];
    std::snprintf(line, sizeof line, "λ=%.6g, stable=%s\n", rep.lambda_min,
                  rep.is_stable ? "true" : "false");
    std::cout << line;
    std::cout << "smallness: lhs=" << io::format_number(rep.smallness_lhs)
              << " rhs=" << io::format_number(rep.smallness_rhs)
              << " satisfied=" << (rep.satisfies_thm2 ? "true" : "false") << "\n";
    return 0;
  });
}

int presets_command(const std::string& write_dir) {
  return guarded([&] {
    for (const auto& name : experiments::preset_names()) {
      const auto c = experiments::preset(name);
      std::cout << name << "\t" << experiments::to_string(c.model) << "\tN=" << c.grid_n
                << "\tA=" << io::format_number(c.phys.atwood()) << "\tt_end=" << c.t_end << "\n";
      if (!write_dir.empty()) io::write_file(write_dir, name + ".json", config::to_json(c));
    }
    return 0;
  });
}

}  // namespace rtmix::cli
