#include "bq/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

namespace bq {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  return out;
}

template <class Int>
Int to_integer(const std::string& v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& v) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw ConfigError("empty entry in list '" + v + "'");
    out.push_back(to_double(t));
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "default"; }

struct Binding {
  std::string key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define BQ_NUMBER(key, member) \
  Binding{key, [](ScenarioConfig& c, const std::string& v) { c.member = to_double(v); }, \
          [](const ScenarioConfig& c) { return num(c.member); }}
#define BQ_INT(key, member) \
  Binding{key, [](ScenarioConfig& c, const std::string& v) { c.member = to_integer<int>(v); }, \
          [](const ScenarioConfig& c) { return std::to_string(c.member); }}
#define BQ_BOOL(key, member) \
  Binding{key, [](ScenarioConfig& c, const std::string& v) { c.member = to_bool(v); }, \
          [](const ScenarioConfig& c) { return std::string(c.member ? "true" : "false"); }}
#define BQ_TEXT(key, member) \
  Binding{key, [](ScenarioConfig& c, const std::string& v) { c.member = v; }, \
          [](const ScenarioConfig& c) { return std::string(c.member); }}
#define BQ_OPTIONAL(key, member) \
  Binding{key, [](ScenarioConfig& c, const std::string& v) { c.member = to_double(v); }, \
          [](const ScenarioConfig& c) { return opt(c.member); }}
#define BQ_LIST(key, member) \
  Binding{key, [](ScenarioConfig& c, const std::string& v) { c.member = to_list(v); }, \
          [](const ScenarioConfig& c) { return list(c.member); }}

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      BQ_TEXT("scenario.name", scenario),
      BQ_NUMBER("scenario.tol_mp", params.tol_mp),
      BQ_BOOL("scenario.refine", params.refine),
      BQ_NUMBER("scenario.decay_margin", params.decay_margin),
      BQ_NUMBER("scenario.window_begin", params.window_begin),
      BQ_NUMBER("scenario.envelope_tol", params.envelope_tol),
      BQ_LIST("scenario.amplitudes", params.amplitudes),
      BQ_NUMBER("scenario.plateau_tol", params.plateau_tol),
      BQ_NUMBER("scenario.plateau_begin", params.plateau_begin),
      BQ_NUMBER("scenario.plateau_floor", params.plateau_floor),
      BQ_LIST("scenario.deltas", params.deltas),
      BQ_NUMBER("scenario.ratio_tol", params.ratio_tol),
      Binding{"scenario.perturbation_seed",
              [](ScenarioConfig& c, const std::string& v) {
                c.params.perturbation_seed = to_integer<std::uint64_t>(v);
              },
              [](const ScenarioConfig& c) { return std::to_string(c.params.perturbation_seed); }},
      BQ_INT("scenario.seeds", params.seeds),
      BQ_INT("grid.nx", nx),
      BQ_INT("grid.ny", ny),
      BQ_TEXT("model.preset", model_preset),
      BQ_OPTIONAL("model.nu0", model_params.nu0),
      BQ_OPTIONAL("model.kappa0", model_params.kappa0),
      BQ_OPTIONAL("model.a", model_params.a),
      BQ_OPTIONAL("model.b", model_params.b),
      BQ_OPTIONAL("model.c", model_params.c),
      BQ_OPTIONAL("model.d", model_params.d),
      BQ_OPTIONAL("model.c0", model_params.c0),
      BQ_NUMBER("stepper.dt", stepper.dt),
      BQ_NUMBER("stepper.t_end", stepper.t_end),
      Binding{"stepper.scheme",
              [](ScenarioConfig& c, const std::string& v) {
                try {
                  c.stepper.scheme = scheme_from_string(v);
                } catch (const std::invalid_argument& e) {
                  throw ConfigError(e.what());
                }
              },
              [](const ScenarioConfig& c) { return to_string(c.stepper.scheme); }},
      BQ_NUMBER("stepper.cfl_safety", stepper.cfl_safety),
      BQ_BOOL("stepper.adaptive", stepper.adaptive),
      BQ_INT("stepper.record_every", record_every),
      BQ_TEXT("initial.preset", initial.preset),
      BQ_NUMBER("initial.amplitude", initial.amplitude),
      BQ_NUMBER("initial.theta_amplitude", initial.theta_amplitude),
      Binding{"initial.seed",
              [](ScenarioConfig& c, const std::string& v) { c.initial.seed = to_integer<std::uint64_t>(v); },
              [](const ScenarioConfig& c) { return std::to_string(c.initial.seed); }},
      BQ_NUMBER("initial.sigma", initial.sigma),
      Binding{"output.dir",
              [](ScenarioConfig& c, const std::string& v) { c.output.dir = v; },
              [](const ScenarioConfig& c) { return c.output.dir.string(); }},
      BQ_BOOL("output.csv", output.csv),
      BQ_BOOL("output.manifest", output.manifest),
      BQ_INT("output.checkpoint_every", output.checkpoint_every),
  };
  return table;
}

#undef BQ_NUMBER
#undef BQ_INT
#undef BQ_BOOL
#undef BQ_TEXT
#undef BQ_OPTIONAL
#undef BQ_LIST

bool contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "max_principle",   "overshoot_decay",      "absorbing_ball", "uniform_bounds",
      "continuity_lipschitz", "attractor_probe", "mms_convergence"};
  return names;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& b : bindings()) out.push_back(b.key);
    return out;
  }();
  return keys;
}

CoefficientModel ScenarioConfig::model() const {
  try {
    return model_from_preset(model_preset, model_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void ScenarioConfig::validate() const {
  if (!contains(scenario_names(), scenario)) {
    throw ConfigError("unknown scenario '" + scenario + "' (known: " + joined(scenario_names()) + ")");
  }
  if (!contains(CoefficientModel::preset_names(), model_preset)) {
    throw ConfigError("unknown model preset '" + model_preset + "' (known: " +
                      joined(CoefficientModel::preset_names()) + ")");
  }
  if (!contains(initial_preset_names(), initial.preset)) {
    throw ConfigError("unknown initial preset '" + initial.preset + "' (known: " +
                      joined(initial_preset_names()) + ")");
  }
  try {
    (void)grid();
    stepper.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (record_every < 1) throw ConfigError("stepper.record_every must be positive");
  if (!(initial.amplitude >= 0.0)) throw ConfigError("initial.amplitude must be non-negative");
  if (!(initial.sigma > 0.0)) throw ConfigError("initial.sigma must be positive");
  if (output.checkpoint_every < 0) throw ConfigError("output.checkpoint_every must be non-negative");
  if (params.seeds < 1) throw ConfigError("scenario.seeds must be positive");
  for (double a : params.amplitudes) {
    if (!(a >= 0.0)) throw ConfigError("scenario.amplitudes must be non-negative");
  }
  for (double d : params.deltas) {
    if (!(d >= 0.0)) throw ConfigError("scenario.deltas must be non-negative");
  }
  for (double tol : {params.tol_mp, params.decay_margin, params.envelope_tol, params.plateau_tol,
                     params.ratio_tol, params.plateau_floor}) {
    if (!(tol >= 0.0)) throw ConfigError("scenario tolerances must be non-negative");
  }
  const AssumptionReport audit = audit_assumptions(model(), -20.0, 20.0, 2000);
  if (!audit.passed()) throw ConfigError("model fails its assumption audit: " + audit.failure_message());
}

std::map<std::string, std::string> ScenarioConfig::echo() const {
  std::map<std::string, std::string> out;
  for (const auto& b : bindings()) out[b.key] = b.get(*this);
  return out;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      return ConfigError("line " + std::to_string(line_no) + ": " + msg);
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw fail("expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& table = bindings();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Binding& b) { return b.key == key; });
    if (it == table.end()) {
      const auto dot = key.find('.');
      const std::string section = dot == std::string::npos ? key : key.substr(0, dot);
      const bool known_section = section == "grid" || section == "model" || section == "stepper" ||
                                 section == "initial" || section == "scenario" || section == "output";
      throw fail(known_section ? "unknown key '" + key + "'" : "unknown section in '" + key + "'");
    }
    if (!seen.insert(key).second) throw fail("duplicate key '" + key + "'");
    if (value.empty()) throw fail("missing value for '" + key + "'");
    try {
      it->set(cfg, value);
    } catch (const ConfigError& e) {
      throw fail(key + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace bq
