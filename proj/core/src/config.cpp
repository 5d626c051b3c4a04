#include "rtmix/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rtmix/errors.hpp"

namespace rtmix::config {

using experiments::FieldSpec;
using experiments::FieldTerm;
using experiments::ModelKind;
using json = nlohmann::ordered_json;

namespace {

const std::pair<ModelKind, const char*> kModels[] = {
    {ModelKind::h_system, "h_system"},
    {ModelKind::h_wave, "h_wave"},
    {ModelKind::h_linear, "h_linear"},
    {ModelKind::z_system, "z_system"},
};

const std::pair<FieldTerm::Kind, const char*> kTermKinds[] = {
    {FieldTerm::Kind::mode, "mode"},         {FieldTerm::Kind::constant, "constant"},
    {FieldTerm::Kind::random, "random"},     {FieldTerm::Kind::tilted, "tilted"},
    {FieldTerm::Kind::samples, "samples"},
};

template <class E, std::size_t N>
const char* name_of(const std::pair<E, const char*> (&table)[N], E value) {
  for (const auto& [v, name] : table)
    if (v == value) return name;
  return "?";
}

// A JSON object under a known dotted path. Reads consume keys; finish()
// rejects whatever was not consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(display(), "expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    if (const json* v = take(key)) {
      try {
        out = v->get<T>();
      } catch (const json::exception&) {
        throw ConfigError(child(key), "wrong type");
      }
    }
  }

  void get_uint(const char* key, std::uint64_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(child(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  const json* take(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : j_.items())
      if (!seen_.contains(key)) throw ConfigError(child(key), "unknown key");
  }

 private:
  std::string display() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

FieldTerm read_term(const json& j, const std::string& path) {
  Reader r(j, path);
  FieldTerm t;
  std::string type;
  r.get("type", type);
  const auto* kind = std::find_if(std::begin(kTermKinds), std::end(kTermKinds),
                                  [&](const auto& e) { return type == e.second; });
  if (kind == std::end(kTermKinds))
    throw ConfigError(r.child("type"), "expected one of mode, constant, random, tilted, samples");
  t.kind = kind->first;
  switch (t.kind) {
    case FieldTerm::Kind::mode: {
      std::string phase = "sin";
      r.get("k", t.k);
      r.get("amp", t.amp);
      r.get("phase", phase);
      r.get("hilbert", t.hilbert);
      if (phase == "sin")
        t.phase = initcond::Phase::sin;
      else if (phase == "cos")
        t.phase = initcond::Phase::cos;
      else
        throw ConfigError(r.child("phase"), "expected sin or cos");
      break;
    }
    case FieldTerm::Kind::constant:
      r.get("value", t.value);
      break;
    case FieldTerm::Kind::random:
      r.get("n", t.n_modes);
      r.get("l2", t.l2);
      r.get_uint("draw", t.draw);
      break;
    case FieldTerm::Kind::tilted:
      r.get("theta_deg", t.theta_deg);
      break;
    case FieldTerm::Kind::samples:
      r.get("values", t.values);
      r.get("file", t.file);
      break;
  }
  r.finish();
  return t;
}

FieldSpec read_field(const json* j, const std::string& path) {
  FieldSpec spec;
  if (!j) return spec;
  if (!j->is_array()) throw ConfigError(path, "expected an array of terms");
  for (std::size_t i = 0; i < j->size(); ++i)
    spec.push_back(read_term((*j)[i], path + "." + std::to_string(i)));
  return spec;
}

json write_term(const FieldTerm& t) {
  json j;
  j["type"] = name_of(kTermKinds, t.kind);
  switch (t.kind) {
    case FieldTerm::Kind::mode:
      j["k"] = t.k;
      j["amp"] = t.amp;
      j["phase"] = t.phase == initcond::Phase::sin ? "sin" : "cos";
      j["hilbert"] = t.hilbert;
      break;
    case FieldTerm::Kind::constant:
      j["value"] = t.value;
      break;
    case FieldTerm::Kind::random:
      j["n"] = t.n_modes;
      j["l2"] = t.l2;
      j["draw"] = t.draw;
      break;
    case FieldTerm::Kind::tilted:
      j["theta_deg"] = t.theta_deg;
      break;
    case FieldTerm::Kind::samples:
      if (t.file.empty())
        j["values"] = t.values;
      else
        j["file"] = t.file;
      break;
  }
  return j;
}

json write_field(const FieldSpec& spec) {
  json a = json::array();
  for (const auto& t : spec) a.push_back(write_term(t));
  return a;
}

json to_tree(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["model"] = name_of(kModels, c.model);
  j["grid"] = {{"n", c.grid_n}};
  j["phys"] = {{"g", c.phys.g},
               {"sigma", c.phys.sigma},
               {"rho_plus", c.phys.rho_plus},
               {"rho_minus", c.phys.rho_minus}};
  j["visc"] = {{"epsilon", c.visc.epsilon}, {"order_s", c.visc.order_s}};
  j["options"] = {{"include_cubic", c.options.include_cubic}};
  json init;
  const std::pair<const char*, const FieldSpec*> fields[] = {
      {"h", &c.init.h}, {"omega", &c.init.omega}, {"ht", &c.init.ht},
      {"dz1", &c.init.dz1}, {"z2", &c.init.z2}};
  for (const auto& [key, spec] : fields)
    if (!spec->empty()) init[key] = write_field(*spec);
  if (c.init.omega0_integral != 0.0) init["omega0_integral"] = c.init.omega0_integral;
  j["init"] = init.is_null() ? json::object() : init;
  j["time"] = {{"t_end", c.t_end},
               {"sample_interval", c.sample_interval},
               {"snapshot_times", c.snapshot_times}};
  j["stepper"] = {{"abs_tol", c.stepper.abs_tol}, {"rel_tol", c.stepper.rel_tol},
                  {"dt_init", c.stepper.dt_init}, {"dt_min", c.stepper.dt_min},
                  {"dt_max", c.stepper.dt_max},   {"safety", c.stepper.safety}};
  j["seeds"] = c.seeds;
  j["outputs"] = c.outputs;
  if (c.growth) j["growth"] = {{"delta", c.growth->delta}, {"window", c.growth->window}};
  return j;
}

ExperimentConfig from_tree(const json& j) {
  ExperimentConfig c;
  Reader root(j, "");
  root.get("name", c.name);

  if (const json* m = root.take("model")) {
    const std::string s = m->is_string() ? m->get<std::string>() : "";
    const auto* it = std::find_if(std::begin(kModels), std::end(kModels),
                                  [&](const auto& e) { return s == e.second; });
    if (it == std::end(kModels))
      throw ConfigError("model", "expected one of h_system, h_wave, h_linear, z_system");
    c.model = it->first;
  }
  if (const json* g = root.take("grid")) {
    Reader r(*g, "grid");
    r.get("n", c.grid_n);
    r.finish();
  }
  if (const json* p = root.take("phys")) {
    Reader r(*p, "phys");
    r.get("g", c.phys.g);
    r.get("sigma", c.phys.sigma);
    r.get("rho_plus", c.phys.rho_plus);
    r.get("rho_minus", c.phys.rho_minus);
    r.finish();
  }
  if (const json* v = root.take("visc")) {
    Reader r(*v, "visc");
    r.get("epsilon", c.visc.epsilon);
    r.get("order_s", c.visc.order_s);
    r.finish();
  }
  if (const json* o = root.take("options")) {
    Reader r(*o, "options");
    r.get("include_cubic", c.options.include_cubic);
    r.finish();
  }
  if (const json* i = root.take("init")) {
    Reader r(*i, "init");
    c.init.h = read_field(r.take("h"), "init.h");
    c.init.omega = read_field(r.take("omega"), "init.omega");
    c.init.ht = read_field(r.take("ht"), "init.ht");
    c.init.dz1 = read_field(r.take("dz1"), "init.dz1");
    c.init.z2 = read_field(r.take("z2"), "init.z2");
    r.get("omega0_integral", c.init.omega0_integral);
    r.finish();
  }
  if (const json* t = root.take("time")) {
    Reader r(*t, "time");
    r.get("t_end", c.t_end);
    r.get("sample_interval", c.sample_interval);
    r.get("snapshot_times", c.snapshot_times);
    r.finish();
  }
  if (const json* s = root.take("stepper")) {
    Reader r(*s, "stepper");
    r.get("abs_tol", c.stepper.abs_tol);
    r.get("rel_tol", c.stepper.rel_tol);
    r.get("dt_init", c.stepper.dt_init);
    r.get("dt_min", c.stepper.dt_min);
    r.get("dt_max", c.stepper.dt_max);
    r.get("safety", c.stepper.safety);
    r.finish();
  }
  if (const json* s = root.take("seeds")) {
    if (!s->is_array()) throw ConfigError("seeds", "expected an array of non-negative integers");
    c.seeds.clear();
    for (const auto& e : *s) {
      if (!e.is_number_unsigned())
        throw ConfigError("seeds", "expected an array of non-negative integers");
      c.seeds.push_back(e.get<std::uint64_t>());
    }
  }
  root.get("outputs", c.outputs);
  if (const json* g = root.take("growth"); g && !g->is_null()) {
    Reader r(*g, "growth");
    experiments::GrowthSpec spec;
    r.get("delta", spec.delta);
    r.get("window", spec.window);
    r.finish();
    c.growth = spec;
  }
  root.finish();
  c.validate();
  return c;
}

json parse_tree(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ConfigError("line " + std::to_string(line), "syntax error");
  }
}

json parse_value(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(std::string(text));
  }
}

}  // namespace

ExperimentConfig parse(std::string_view text) { return from_tree(parse_tree(text)); }

ExperimentConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string to_json(const ExperimentConfig& c) { return to_tree(c).dump(2) + "\n"; }

namespace {

void apply_override(json& tree, std::string_view key_equals_value) {
  const auto eq = key_equals_value.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override", "expected key=value, got '" + std::string(key_equals_value) + "'");
  const std::string key(key_equals_value.substr(0, eq));

  json* node = &tree;
  std::string walked;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const std::string& p = path[i];
    walked = walked.empty() ? p : walked + "." + p;
    const bool last = i + 1 == path.size();
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(p);
      } catch (const std::exception&) {
        throw ConfigError(walked, "expected an array index");
      }
      // One past the end appends.
      if (idx > node->size()) throw ConfigError(walked, "index out of range");
      if (idx == node->size()) node->push_back(last ? json() : json::object());
      node = &(*node)[idx];
    } else if (node->is_object() || node->is_null()) {
      // Unknown keys are caught when the tree is read back.
      if (!last && !node->contains(p)) (*node)[p] = json::object();
      node = &(*node)[p];
    } else {
      throw ConfigError(walked, "is not an object or array");
    }
  }
  *node = parse_value(key_equals_value.substr(eq + 1));
}

}  // namespace

ExperimentConfig with_override(const ExperimentConfig& c, std::string_view key_equals_value) {
  return with_overrides(c, std::vector<std::string>{std::string(key_equals_value)});
}

ExperimentConfig with_overrides(const ExperimentConfig& c, const std::vector<std::string>& overrides) {
  json tree = to_tree(c);
  for (const auto& o : overrides) apply_override(tree, o);
  return from_tree(tree);
}

ExperimentConfig resolve(const std::string& preset_or_path) {
  const auto names = experiments::preset_names();
  if (std::find(names.begin(), names.end(), preset_or_path) != names.end())
    return experiments::preset(preset_or_path);
  if (std::filesystem::exists(preset_or_path)) return load(preset_or_path);
  throw ConfigError("", "'" + preset_or_path + "' is neither a preset nor a readable file");
}

}  // namespace rtmix::config
