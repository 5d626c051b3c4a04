#include "rtmix/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rtmix::io {

using experiments::ExperimentResult;
using experiments::ModelKind;
using json = nlohmann::ordered_json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string time_tag(double t) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), t);
  return std::string(buf.data(), res.ptr);
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xf];
  return out;
}

namespace {

// Cells of one timeseries row; empty optionals stand for inapplicable diagnostics.
std::vector<std::optional<double>> row(const experiments::SampleRecord& s) {
  std::vector<std::optional<double>> cells{s.t, s.linf, s.width};
  if (s.energy) {
    const auto& e = *s.energy;
    cells.insert(cells.end(), {e.e1, e.e2, e.e3, e.d1, e.d2, e.d3});
  } else {
    cells.resize(cells.size() + 6);
  }
  cells.push_back(s.lambda_min);
  if (s.gap) {
    cells.push_back(s.gap->gap_h);
    cells.push_back(s.gap->gap_ht);
  } else {
    cells.resize(cells.size() + 2);
  }
  return cells;
}

std::string header(std::initializer_list<const char*> cols) {
  std::string out;
  for (const char* c : cols) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + '\n';
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string timeseries_csv(const ExperimentResult& r) {
  std::string out;
  for (const char* c : kTimeseriesColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  out += '\n';
  for (const auto& s : r.samples) {
    bool first = true;
    for (const auto& cell : row(s)) {
      if (!first) out += ',';
      first = false;
      if (cell) out += format_number(*cell);
    }
    out += '\n';
  }
  return out;
}

std::string timeseries_json(const ExperimentResult& r) {
  json j;
  j["columns"] = kTimeseriesColumns;
  json rows = json::array();
  for (const auto& s : r.samples) {
    json cells = json::array();
    for (const auto& cell : row(s)) cells.push_back(cell ? number_or_null(*cell) : json(nullptr));
    rows.push_back(std::move(cells));
  }
  j["rows"] = std::move(rows);
  return j.dump() + "\n";
}

std::string snapshot_csv(const experiments::Snapshot& s) {
  const bool z = !s.y.empty();
  std::string out = z ? header({"alpha", "z1", "z2"}) : header({"alpha", "h"});
  for (std::size_t j = 0; j < s.alpha.size(); ++j) {
    out += format_number(s.alpha[j]);
    out += ',';
    out += format_number(s.x[j]);
    if (z) {
      out += ',';
      out += format_number(s.y[j]);
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const experiments::Snapshot& s) {
  std::string out = header({"k", "E_k"});
  for (std::size_t k = 0; k < s.spectrum.size(); ++k)
    out += std::to_string(k) + ',' + format_number(s.spectrum[k]) + '\n';
  return out;
}

std::string ensemble_csv(const experiments::EnsembleAggregate& a) {
  std::string out = header({"t", "count", "width_mean", "width_min", "width_max", "linf_mean",
                            "linf_min", "linf_max"});
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    out += format_number(a.t[i]) + ',' + std::to_string(a.count[i]);
    for (double v : {a.width_mean[i], a.width_min[i], a.width_max[i], a.linf_mean[i],
                     a.linf_min[i], a.linf_max[i]})
      out += ',' + format_number(v);
    out += '\n';
  }
  return out;
}

OutputFile write_file(const fs::path& root, const std::string& relative, std::string_view contents) {
  const fs::path target = root / fs::path(relative);
  fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("cannot write " + target.string());
  return {relative, fnv1a64(contents), contents.size()};
}

std::vector<OutputFile> write_result(const ExperimentResult& r, const fs::path& root,
                                     const std::string& prefix, Format format) {
  const std::string base = prefix.empty() ? "" : prefix + "/";
  std::vector<OutputFile> files;
  if (format == Format::csv)
    files.push_back(write_file(root, base + "timeseries.csv", timeseries_csv(r)));
  else
    files.push_back(write_file(root, base + "timeseries.json", timeseries_json(r)));
  for (const auto& snap : r.snapshots) {
    const std::string name = "t_" + time_tag(snap.t) + ".csv";
    files.push_back(write_file(root, base + "snapshots/" + name, snapshot_csv(snap)));
    if (r.config.wants("spectrum"))
      files.push_back(write_file(root, base + "spectrum/" + name, spectrum_csv(snap)));
  }
  return files;
}

void write_manifest(const RunManifest& m, const fs::path& root) {
  json j;
  j["version"] = m.version;
  j["command"] = m.command;
  j["config"] = json::parse(m.config_json);
  j["wall_seconds"] = m.wall_seconds;
  json runs = json::array();
  for (const ExperimentResult* r : m.runs) {
    json e;
    e["seed"] = r->seed;
    e["status"] = experiments::to_string(r->status);
    e["message"] = r->message;
    e["samples"] = r->samples.size();
    e["steps_accepted"] = r->stats.accepted;
    e["steps_rejected"] = r->stats.rejected;
    e["rhs_evaluations"] = r->stats.rhs_evaluations;
    if (r->growth)
      e["growth"] = {{"max_deviation", number_or_null(r->growth->max_deviation)},
                     {"delta_least_squares", number_or_null(r->growth->delta_least_squares)},
                     {"samples", r->growth->samples}};
    runs.push_back(std::move(e));
  }
  j["runs"] = std::move(runs);
  json files = json::array();
  for (const auto& f : m.files)
    files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.checksum}});
  j["files"] = std::move(files);
  write_file(root, "manifest.json", j.dump(2) + "\n");
}

}  // namespace rtmix::io
