#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rtmix/experiments.hpp"

// JSON text form of ExperimentConfig. Every object is closed: an unknown key
// is a ConfigError naming its dotted path. Missing keys take the defaults of
// the C++ types. See docs/config.md for the schema.

namespace rtmix::config {

using experiments::ExperimentConfig;

ExperimentConfig parse(std::string_view text);
ExperimentConfig load(const std::filesystem::path& path);

/// Pretty-printed JSON; parse(to_json(c)) == c for every valid config.
std::string to_json(const ExperimentConfig& c);

/// Sets one dotted key path ("visc.epsilon", "init.h.0.amp") to `value`,
/// which is parsed as JSON and otherwise taken as a string. The result is
/// re-validated.
ExperimentConfig with_override(const ExperimentConfig& c, std::string_view key_equals_value);

/// Applies every override in order and validates once at the end, so
/// dependent keys (t_end and snapshot_times) can change together.
ExperimentConfig with_overrides(const ExperimentConfig& c, const std::vector<std::string>& overrides);

/// A preset name or a path to a config file.
ExperimentConfig resolve(const std::string& preset_or_path);

}  // namespace rtmix::config
