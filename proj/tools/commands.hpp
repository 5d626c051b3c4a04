#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtmix/io.hpp"

namespace rtmix::cli {

struct CommonOptions {
  std::string target;  // preset name or config path
  std::vector<std::string> overrides;
  std::string out_dir;
  io::Format format = io::Format::csv;
  std::string command_line;
};

// Each returns the process exit status.
int run_command(const CommonOptions& opt, std::optional<std::uint64_t> seed);
int ensemble_command(const CommonOptions& opt, const std::string& seed_range, unsigned threads);
int check_command(const CommonOptions& opt);
int presets_command(const std::string& write_dir);

/// "a..b" inclusive, or a single seed. Throws ConfigError("seeds", ...) otherwise.
std::vector<std::uint64_t> parse_seed_range(const std::string& text);

}  // namespace rtmix::cli
