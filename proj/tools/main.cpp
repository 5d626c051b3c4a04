#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rtmix/version.hpp"

int main(int argc, char** argv) {
  using rtmix::cli::CommonOptions;

  CLI::App app{"rtmix: Rayleigh-Taylor interface models on a periodic domain"};
  app.set_version_flag("--version", rtmix::kVersion);
  app.require_subcommand(1);

  const char* env_out = std::getenv("RTMIX_OUT_DIR");
  CommonOptions opt;
  opt.out_dir = env_out && *env_out ? env_out : "rtmix_out";
  for (int i = 0; i < argc; ++i) opt.command_line += (i ? " " : "") + std::string(argv[i]);

  std::string format = "csv";
  auto add_common = [&](CLI::App* sub, bool outputs) {
    sub->add_option("config", opt.target, "Preset name or config file")->required();
    sub->add_option("--override", opt.overrides, "Dotted key=value, value parsed as JSON")
        ->take_all();
    if (outputs) {
      sub->add_option("--out", opt.out_dir, "Output directory (default: $RTMIX_OUT_DIR or rtmix_out)");
      sub->add_option("--format", format, "Time series format")
          ->check(CLI::IsMember({"csv", "json"}));
    }
  };

  auto* run = app.add_subcommand("run", "Integrate one configuration");
  add_common(run, true);
  std::uint64_t seed = 0;
  auto* seed_opt = run->add_option("--seed", seed, "Seed to run (default: first configured seed)");

  auto* ensemble = app.add_subcommand("ensemble", "Run one integration per seed and aggregate");
  add_common(ensemble, true);
  std::string seeds;
  unsigned threads = 0;
  ensemble->add_option("--seeds", seeds, "Seed range a..b (default: configured seeds)");
  ensemble->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

  auto* check = app.add_subcommand("check", "Stability report for the initial data");
  add_common(check, false);

  auto* presets = app.add_subcommand("presets", "List built-in presets");
  std::string write_dir;
  presets->add_option("--write", write_dir, "Also export each preset as <dir>/<name>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  opt.format = format == "json" ? rtmix::io::Format::json : rtmix::io::Format::csv;

  if (run->parsed())
    return rtmix::cli::run_command(opt, seed_opt->count() ? std::optional(seed) : std::nullopt);
  if (ensemble->parsed()) return rtmix::cli::ensemble_command(opt, seeds, threads);
  if (check->parsed()) return rtmix::cli::check_command(opt);
  return rtmix::cli::presets_command(write_dir);
}
