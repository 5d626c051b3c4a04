#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rtmix/experiments.hpp"

namespace rtmix::io {

namespace fs = std::filesystem;

enum class Format { csv, json };

/// 17 significant digits, '.' as decimal separator regardless of locale.
std::string format_number(double x);

/// Shortest round-trip form, used in file names (t_0.45.csv).
std::string time_tag(double t);

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

inline constexpr const char* kTimeseriesColumns[] = {
    "t",  "linf_amplitude", "width", "e1",         "e2",    "e3",
    "d1", "d2",             "d3",    "lambda_min", "gap_h", "gap_ht"};

/// One row per sample; diagnostics a model does not produce are empty cells.
std::string timeseries_csv(const experiments::ExperimentResult& r);
std::string timeseries_json(const experiments::ExperimentResult& r);

/// alpha,h for graph models or alpha,z1,z2 for the z-model.
std::string snapshot_csv(const experiments::Snapshot& s);
/// k,E_k for k = 0..N/2.
std::string spectrum_csv(const experiments::Snapshot& s);

std::string ensemble_csv(const experiments::EnsembleAggregate& a);

struct OutputFile {
  std::string path;  // relative to the output root, '/' separated
  std::string checksum;
  std::uintmax_t bytes = 0;
};

/// Writes `contents` to root/relative and records its checksum.
OutputFile write_file(const fs::path& root, const std::string& relative, std::string_view contents);

/// timeseries, snapshots/ and (if requested) spectrum/ for one run, placed
/// under root/prefix.
std::vector<OutputFile> write_result(const experiments::ExperimentResult& r, const fs::path& root,
                                     const std::string& prefix, Format format);

struct RunManifest {
  std::string version;
  std::string command;
  std::string config_json;
  double wall_seconds = 0.0;
  std::vector<OutputFile> files;
  std::vector<const experiments::ExperimentResult*> runs;
};

/// manifest.json under root. Not itself listed in `files`.
void write_manifest(const RunManifest& m, const fs::path& root);

}  // namespace rtmix::io
