#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "rtmix/config.hpp"
#include "rtmix/errors.hpp"

using namespace rtmix;
using namespace rtmix::experiments;
namespace fs = std::filesystem;

namespace {

std::string error_field(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / ("rtmix_config_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, PresetsRoundTrip) {
  for (const auto& name : preset_names()) {
    const ExperimentConfig c = preset(name);
    const std::string text = config::to_json(c);
    EXPECT_EQ(config::parse(text), c) << name;
    EXPECT_EQ(config::to_json(config::parse(text)), text) << name;
  }
}

TEST(Config, MinimalDocumentTakesDefaults) {
  const ExperimentConfig c = config::parse(R"({"name": "tiny", "grid": {"n": 16}})");
  EXPECT_EQ(c.name, "tiny");
  EXPECT_EQ(c.grid_n, 16);
  EXPECT_EQ(c.model, ModelKind::h_system);
  EXPECT_TRUE(c.init.h.empty());
  EXPECT_FALSE(c.growth.has_value());
}

TEST(Config, TermsParsed) {
  const ExperimentConfig c = config::parse(R"({
    "model": "h_wave",
    "init": {
      "h": [{"type": "mode", "k": 2, "amp": 0.5, "phase": "cos", "hilbert": true},
            {"type": "random", "n": 4, "l2": 0.1, "draw": 3}],
      "ht": [{"type": "constant", "value": -1.0}, {"type": "tilted", "theta_deg": 5.0}],
      "omega0_integral": 0.25
    }
  })");
  ASSERT_EQ(c.init.h.size(), 2u);
  EXPECT_EQ(c.init.h[0].kind, FieldTerm::Kind::mode);
  EXPECT_EQ(c.init.h[0].k, 2);
  EXPECT_EQ(c.init.h[0].phase, initcond::Phase::cos);
  EXPECT_TRUE(c.init.h[0].hilbert);
  EXPECT_EQ(c.init.h[1].kind, FieldTerm::Kind::random);
  EXPECT_EQ(c.init.h[1].n_modes, 4);
  EXPECT_EQ(c.init.h[1].draw, 3u);
  EXPECT_EQ(c.init.ht[0].value, -1.0);
  EXPECT_EQ(c.init.ht[1].theta_deg, 5.0);
  EXPECT_EQ(c.init.omega0_integral, 0.25);
}

TEST(Config, UnknownKeysNamedByPath) {
  EXPECT_EQ(error_field([] { config::parse(R"({"nmae": "x"})"); }), "nmae");
  EXPECT_EQ(error_field([] { config::parse(R"({"visc": {"eps": 1}})"); }), "visc.eps");
  EXPECT_EQ(error_field([] {
              config::parse(R"({"init": {"h": [{"type": "mode"}, {"type": "mode", "kk": 1}]}})");
            }),
            "init.h.1.kk");
  // Keys of another term type are unknown too.
  EXPECT_EQ(error_field([] { config::parse(R"({"init": {"h": [{"type": "constant", "k": 1}]}})"); }),
            "init.h.0.k");
}

TEST(Config, TypeAndValueErrors) {
  EXPECT_EQ(error_field([] { config::parse(R"({"grid": {"n": "big"}})"); }), "grid.n");
  EXPECT_EQ(error_field([] { config::parse(R"({"grid": {"n": 100}})"); }), "grid.n");
  EXPECT_EQ(error_field([] { config::parse(R"({"model": "x_model"})"); }), "model");
  EXPECT_EQ(error_field([] { config::parse(R"({"seeds": [1, -2]})"); }), "seeds");
  EXPECT_EQ(error_field([] { config::parse(R"({"init": {"h": {"type": "mode"}}})"); }), "init.h");
  EXPECT_EQ(error_field([] { config::parse(R"({"init": {"h": [{"type": "wave"}]}})"); }),
            "init.h.0.type");
  EXPECT_EQ(error_field([] {
              config::parse(R"({"init": {"h": [{"type": "mode", "phase": "tan"}]}})");
            }),
            "init.h.0.phase");
  EXPECT_EQ(error_field([] { config::parse(R"({"phys": {"rho_minus": 0}})"); }), "phys");
  EXPECT_EQ(error_field([] { config::parse("[1, 2]"); }), "config");
}

TEST(Config, SyntaxErrorReportsLine) {
  const std::string text = "{\n  \"name\": \"x\",\n  \"grid\": {\"n\": 16,}\n}\n";
  EXPECT_EQ(error_field([&] { config::parse(text); }), "line 3");
}

TEST(Config, Overrides) {
  const ExperimentConfig base = preset("sim1");
  EXPECT_EQ(config::with_override(base, "visc.epsilon=0.008").visc.epsilon, 0.008);
  EXPECT_EQ(config::with_override(base, "grid.n=256").grid_n, 256);
  EXPECT_EQ(config::with_override(base, "init.h.0.amp=0.5").init.h[0].amp, 0.5);
  EXPECT_EQ(config::with_override(base, "name=renamed").name, "renamed");
  EXPECT_EQ(config::with_override(base, "seeds=[4,5]").seeds, (std::vector<std::uint64_t>{4, 5}));
  const ExperimentConfig g = config::with_override(base, "growth.window=0.1");
  ASSERT_TRUE(g.growth.has_value());
  EXPECT_EQ(g.growth->window, 0.1);

  EXPECT_EQ(error_field([&] { config::with_override(base, "visc.eps=1"); }), "visc.eps");
  EXPECT_EQ(error_field([&] { config::with_override(base, "init.h.4.amp=1"); }), "init.h.4");
  const ExperimentConfig appended =
      config::with_override(base, R"(init.h.1={"type": "constant", "value": 0.3})");
  ASSERT_EQ(appended.init.h.size(), 2u);
  EXPECT_EQ(appended.init.h[1].value, 0.3);
  EXPECT_EQ(error_field([&] { config::with_override(base, "init.h.x=1"); }), "init.h.x");
  EXPECT_EQ(error_field([&] { config::with_override(base, "grid.n.k=1"); }), "grid.n.k");
  EXPECT_EQ(error_field([&] { config::with_override(base, "novalue"); }), "override");
  EXPECT_EQ(error_field([&] { config::with_override(base, "grid.n=12"); }), "grid.n");

  // Validation runs once after all overrides.
  EXPECT_EQ(error_field([&] { config::with_override(base, "time.t_end=1"); }), "time.snapshot_times");
  const ExperimentConfig shorter =
      config::with_overrides(base, {"time.t_end=1", "time.snapshot_times=[0.5]"});
  EXPECT_EQ(shorter.t_end, 1.0);
  EXPECT_EQ(shorter.snapshot_times, std::vector<double>{0.5});
}

TEST(Config, LoadAndResolve) {
  const fs::path dir = temp_dir();
  const fs::path file = dir / "sim4.json";
  {
    std::ofstream out(file);
    out << config::to_json(preset("sim4"));
  }
  EXPECT_EQ(config::load(file), preset("sim4"));
  EXPECT_EQ(config::resolve(file.string()), preset("sim4"));
  EXPECT_EQ(config::resolve("sim2"), preset("sim2"));
  EXPECT_THROW(config::resolve((dir / "missing.json").string()), ConfigError);
  EXPECT_THROW(config::load(dir / "missing.json"), ConfigError);
  fs::remove_all(dir);
}

TEST(Config, SampleFileTerm) {
  const fs::path dir = temp_dir();
  const fs::path file = dir / "h.txt";
  {
    std::ofstream out(file);
    for (int j = 0; j < 8; ++j) out << 0.125 * j << "\n";
  }
  const ExperimentConfig c = config::parse(R"({"grid": {"n": 8}, "init": {"h": [{"type": "samples", "file": ")" +
                                           file.string() + R"("}]}})");
  const auto f = build_field(spectral::PeriodicGrid(8), c.init.h, 0);
  for (int j = 0; j < 8; ++j) EXPECT_EQ(f[j], 0.125 * j);

  const ExperimentConfig inline_values = config::parse(
      R"({"grid": {"n": 4}, "init": {"h": [{"type": "samples", "values": [1, 2, 3, 4]}]}})");
  EXPECT_EQ(build_field(spectral::PeriodicGrid(4), inline_values.init.h, 0)[2], 3.0);
  EXPECT_EQ(error_field([] {
              config::parse(R"({"grid": {"n": 4}, "init": {"h": [{"type": "samples", "values": [1]}]}})");
            }),
            "init.h.0.values");
  fs::remove_all(dir);
}

TEST(Config, ShippedPresetFilesMatchBuiltins) {
  // Regenerate with: rtmix presets --write presets
  for (const auto& name : preset_names()) {
    const fs::path file = fs::path(RTMIX_PRESETS_DIR) / (name + ".json");
    ASSERT_TRUE(fs::exists(file)) << file;
    EXPECT_EQ(config::load(file), preset(name)) << name;
  }
}
