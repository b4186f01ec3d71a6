// Copyright 2026 The OttoForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ottoforge/cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include <toml.hpp>

#include "ottoforge/controls.hpp"
#include "ottoforge/errors.hpp"

namespace ottoforge::cli {

namespace {

std::string joined(std::string_view a, std::string_view b) {
  return a.empty() ? std::string(b) : std::string(a) + "." + std::string(b);
}

void check_keys(const toml::table& table, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, node] : table) {
    if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end()) {
      throw ConfigError("unknown key '" + joined(where, key.str()) + "'");
    }
  }
}

const toml::table* subtable(const toml::table& root, std::string_view key) {
  const toml::node* node = root.get(key);
  if (!node) return nullptr;
  if (!node->is_table()) throw ConfigError("'" + std::string(key) + "' must be a table");
  return node->as_table();
}

double as_number(const toml::node& node, const std::string& name) {
  if (auto i = node.as_integer()) return static_cast<double>(i->get());
  if (auto f = node.as_floating_point()) return f->get();
  throw ConfigError("'" + name + "' must be a number");
}

std::optional<double> number(const toml::table& t, std::string_view where, std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  return as_number(*node, joined(where, key));
}

double required_number(const toml::table& t, std::string_view where, std::string_view key) {
  auto v = number(t, where, key);
  if (!v) throw ConfigError("missing required key '" + joined(where, key) + "'");
  return *v;
}

std::optional<std::int64_t> integer(const toml::table& t, std::string_view where,
                                    std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto i = node->as_integer()) return i->get();
  throw ConfigError("'" + joined(where, key) + "' must be an integer");
}

std::optional<std::string> string(const toml::table& t, std::string_view where,
                                  std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto s = node->as_string()) return s->get();
  throw ConfigError("'" + joined(where, key) + "' must be a string");
}

std::optional<bool> boolean(const toml::table& t, std::string_view where, std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto b = node->as_boolean()) return b->get();
  throw ConfigError("'" + joined(where, key) + "' must be true or false");
}

// A single number is accepted as a one-element list.
std::optional<std::vector<double>> numbers(const toml::table& t, std::string_view where,
                                           std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  const std::string name = joined(where, key);
  std::vector<double> out;
  if (auto arr = node->as_array()) {
    for (const auto& item : *arr) out.push_back(as_number(item, name));
    if (out.empty()) throw ConfigError("'" + name + "' must not be empty");
  } else {
    out.push_back(as_number(*node, name));
  }
  return out;
}

std::optional<std::vector<std::string>> strings(const toml::table& t, std::string_view where,
                                                std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  const std::string name = joined(where, key);
  const auto* arr = node->as_array();
  if (!arr) throw ConfigError("'" + name + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& item : *arr) {
    auto s = item.as_string();
    if (!s) throw ConfigError("'" + name + "' must be a list of strings");
    out.push_back(s->get());
  }
  if (out.empty()) throw ConfigError("'" + name + "' must not be empty");
  return out;
}

Enhancement mode_named(const std::string& text, const std::string& where) {
  auto mode = parse_enhancement(text);
  if (!mode) throw ConfigError("'" + where + "': unknown mode '" + text + "' (NA, STA, QL)");
  return *mode;
}

// Exactly one of the total splitting or the z amplitude.
double omega_z(const toml::table& t, std::string_view total_key, std::string_view z_key,
               double omega_x) {
  auto total = number(t, "engine", total_key);
  auto z = number(t, "engine", z_key);
  if (total && z) {
    throw ConfigError("give only one of 'engine." + std::string(total_key) + "' and 'engine." +
                      std::string(z_key) + "'");
  }
  if (z) return *z;
  if (!total) {
    throw ConfigError("missing required key 'engine." + std::string(total_key) + "' (or 'engine." +
                      std::string(z_key) + "')");
  }
  if (*total < omega_x) {
    throw ConfigError("'engine." + std::string(total_key) + "' must be at least omega_x");
  }
  return std::sqrt(*total * *total - omega_x * omega_x);
}

EngineSpec parse_engine(const toml::table& t) {
  check_keys(t, "engine",
             {"omega_x", "omega_cold", "omega_z_cold", "omega_hot", "omega_z_hot",
              "temperature_cold", "temperature_hot", "alpha", "omega_cutoff", "substeps"});
  EngineSpec e;
  e.omega_x = number(t, "engine", "omega_x").value_or(1.0);
  if (!(e.omega_x > 0.0)) throw ConfigError("'engine.omega_x' must be positive");
  e.omega_z_cold = omega_z(t, "omega_cold", "omega_z_cold", e.omega_x);
  e.omega_z_hot = omega_z(t, "omega_hot", "omega_z_hot", e.omega_x);
  e.temperature_cold = required_number(t, "engine", "temperature_cold");
  e.temperature_hot = required_number(t, "engine", "temperature_hot");
  if (!(e.temperature_cold > 0.0) || !(e.temperature_hot > 0.0)) {
    throw ConfigError("temperatures must be positive");
  }
  e.alpha = number(t, "engine", "alpha").value_or(e.alpha);
  e.omega_cutoff = number(t, "engine", "omega_cutoff");
  if (auto s = integer(t, "engine", "substeps")) {
    if (*s < 1 || *s > 1'000'000) throw ConfigError("'engine.substeps' must be in [1, 1e6]");
    e.substeps = static_cast<int>(*s);
  }
  return e;
}

std::vector<double> tau_grid(const toml::table& g) {
  check_keys(g, "sweep.tau_grid", {"min", "max", "count", "spacing"});
  const double lo = required_number(g, "sweep.tau_grid", "min");
  const double hi = required_number(g, "sweep.tau_grid", "max");
  const auto count = integer(g, "sweep.tau_grid", "count");
  if (!count) throw ConfigError("missing required key 'sweep.tau_grid.count'");
  const std::string spacing = string(g, "sweep.tau_grid", "spacing").value_or("log");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("'sweep.tau_grid' needs 0 < min <= max");
  if (*count < 1 || *count > 100000) throw ConfigError("'sweep.tau_grid.count' out of range");
  if (spacing != "log" && spacing != "linear") {
    throw ConfigError("'sweep.tau_grid.spacing' must be 'log' or 'linear'");
  }
  std::vector<double> out;
  const auto n = static_cast<int>(*count);
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(spacing == "log" ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
  }
  if (n > 1) out.back() = hi;  // exact endpoint despite pow roundoff
  return out;
}

SweepSpec parse_sweep(const toml::table* t) {
  SweepSpec s;
  if (!t) throw ConfigError("missing required table [sweep]");
  check_keys(*t, "sweep", {"modes", "tau", "tau_grid", "lambda_ql"});
  if (auto modes = strings(*t, "sweep", "modes")) {
    s.modes.clear();
    for (const auto& m : *modes) s.modes.push_back(mode_named(m, "sweep.modes"));
  }
  const auto* grid = subtable(*t, "tau_grid");
  auto taus = numbers(*t, "sweep", "tau");
  if (grid && taus) throw ConfigError("give only one of 'sweep.tau' and 'sweep.tau_grid'");
  if (grid) {
    s.taus = tau_grid(*grid);
  } else if (taus) {
    s.taus = *taus;
  } else {
    throw ConfigError("missing required key 'sweep.tau' (or 'sweep.tau_grid')");
  }
  for (double tau : s.taus) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw ConfigError("cycle times must be >= 0");
  }
  if (auto ql = numbers(*t, "sweep", "lambda_ql")) s.lambda_ql = *ql;
  for (double q : s.lambda_ql) {
    if (!(q >= 0.0)) throw ConfigError("'sweep.lambda_ql' values must be >= 0");
  }
  return s;
}

FpmsSpec parse_fpms(const toml::table* t) {
  FpmsSpec f;
  if (!t) return f;
  check_keys(*t, "fpms", {"initial_populations", "distributions"});
  if (auto src = string(*t, "fpms", "initial_populations")) {
    auto parsed = parse_initial_populations(*src);
    if (!parsed) {
      throw ConfigError("'fpms.initial_populations' must be 'unmonitored' or 'monitored'");
    }
    f.initial_populations = *parsed;
  }
  f.distributions = string(*t, "fpms", "distributions");
  return f;
}

OracleSpec parse_oracle(const toml::table* t) {
  OracleSpec o;
  if (!t) return o;
  check_keys(*t, "oracle",
             {"trajectories", "steps", "tau", "strokes", "mode", "lambda", "lambda_ql",
              "initial_state", "seed"});
  if (auto n = integer(*t, "oracle", "trajectories")) {
    if (*n < 100 || *n > 100'000'000) throw ConfigError("'oracle.trajectories' must be >= 100");
    o.trajectories = static_cast<int>(*n);
  }
  if (auto n = integer(*t, "oracle", "steps")) {
    if (*n < 1 || *n > 10'000'000) throw ConfigError("'oracle.steps' must be >= 1");
    o.steps = static_cast<int>(*n);
  }
  o.tau = number(*t, "oracle", "tau").value_or(o.tau);
  if (!(o.tau > 0.0)) throw ConfigError("'oracle.tau' must be positive");
  if (auto names = strings(*t, "oracle", "strokes")) {
    o.strokes.clear();
    for (const auto& name : *names) {
      auto kind = parse_stroke_kind(name);
      if (!kind) throw ConfigError("'oracle.strokes': unknown stroke '" + name + "'");
      o.strokes.push_back(*kind);
    }
  }
  if (auto m = string(*t, "oracle", "mode")) o.mode = mode_named(*m, "oracle.mode");
  o.lambda = number(*t, "oracle", "lambda");
  if (o.lambda && !(*o.lambda >= 0.0)) throw ConfigError("'oracle.lambda' must be >= 0");
  o.lambda_ql = number(*t, "oracle", "lambda_ql").value_or(0.0);
  if (!(o.lambda_ql >= 0.0)) throw ConfigError("'oracle.lambda_ql' must be >= 0");
  if (auto s = string(*t, "oracle", "initial_state")) {
    if (*s == "ground") {
      o.initial_state = InitialState::ground;
    } else if (*s == "excited") {
      o.initial_state = InitialState::excited;
    } else if (*s == "plus") {
      o.initial_state = InitialState::plus;
    } else {
      throw ConfigError("'oracle.initial_state' must be 'ground', 'excited' or 'plus'");
    }
  }
  if (auto seed = integer(*t, "oracle", "seed")) {
    if (*seed < 0) throw ConfigError("'oracle.seed' must be non-negative");
    o.seed = static_cast<std::uint64_t>(*seed);
  }
  return o;
}

RunConfig build(const toml::table& root) {
  check_keys(root, "", {"schema_version", "engine", "noise", "sweep", "fpms", "oracle"});
  const auto version = integer(root, "", "schema_version");
  if (!version) throw ConfigError("missing required key 'schema_version'");
  if (*version != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(*version) + " (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  RunConfig run;
  const auto* engine = subtable(root, "engine");
  if (!engine) throw ConfigError("missing required table [engine]");
  run.engine = parse_engine(*engine);

  const auto* noise = subtable(root, "noise");
  if (!noise) throw ConfigError("missing required table [noise]");
  check_keys(*noise, "noise", {"lambda", "x_axis_noise"});
  auto lambdas = numbers(*noise, "noise", "lambda");
  if (!lambdas) throw ConfigError("missing required key 'noise.lambda'");
  for (double l : *lambdas) {
    if (!(l >= 0.0)) throw ConfigError("'noise.lambda' values must be >= 0");
  }
  run.lambdas = *lambdas;
  run.x_axis_noise = boolean(*noise, "noise", "x_axis_noise").value_or(false);

  run.sweep = parse_sweep(subtable(root, "sweep"));
  run.fpms = parse_fpms(subtable(root, "fpms"));
  run.oracle = parse_oracle(subtable(root, "oracle"));

  sweep_grid(run);  // validates every point
  return run;
}

}  // namespace

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  try {
    return build(toml::parse(text, source));
  } catch (const toml::parse_error& err) {
    std::ostringstream why;
    why << source << ":" << err.source().begin.line << ":" << err.source().begin.column << ": "
        << err.description();
    throw ConfigError(why.str());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  try {
    return build(toml::parse_file(path.string()));
  } catch (const toml::parse_error& err) {
    std::ostringstream why;
    why << path.string() << ":" << err.source().begin.line << ":" << err.source().begin.column
        << ": " << err.description();
    throw ConfigError(why.str());
  }
}

CycleConfig make_cycle_config(const RunConfig& run, Enhancement mode, double tau, double lambda,
                              double lambda_ql) {
  CycleConfig c;
  c.omega_x = run.engine.omega_x;
  c.omega_z_cold = run.engine.omega_z_cold;
  c.omega_z_hot = run.engine.omega_z_hot;
  c.tau_cycle = tau;
  c.beta_h = 1.0 / run.engine.temperature_hot;
  c.beta_c = 1.0 / run.engine.temperature_cold;
  c.alpha = run.engine.alpha;
  c.omega_cutoff = run.engine.omega_cutoff;
  c.noise = NoiseSpec::shared(lambda, run.x_axis_noise);
  c.noise.ql_strength = mode == Enhancement::QL ? lambda_ql : 0.0;
  c.enhancement = mode;
  c.substeps = run.engine.substeps;
  try {
    c.validate();
  } catch (const InvalidArgument& err) {
    throw ConfigError(err.what());
  }
  return c;
}

std::vector<GridPoint> sweep_grid(const RunConfig& run) {
  std::vector<GridPoint> out;
  const std::vector<double> no_ql{0.0};
  for (Enhancement mode : run.sweep.modes) {
    for (double lambda : run.lambdas) {
      const auto& qls = mode == Enhancement::QL ? run.sweep.lambda_ql : no_ql;
      for (double ql : qls) {
        for (double tau : run.sweep.taus) {
          out.push_back({mode, tau, lambda, ql, make_cycle_config(run, mode, tau, lambda, ql)});
        }
      }
    }
  }
  return out;
}

StrokeConfig oracle_stroke(const RunConfig& run, StrokeKind kind) {
  const OracleSpec& o = run.oracle;
  CycleConfig c = make_cycle_config(run, o.mode, o.tau, o.lambda.value_or(run.lambdas.front()),
                                    o.lambda_ql);
  c.alpha = 0.0;
  return c.stroke(kind);
}

DensityMatrix oracle_initial_state(const RunConfig& run, const StrokeConfig& stroke) {
  const EnergyBasis basis = energy_basis(stroke.omega_x, stroke.omega_z_start());
  switch (run.oracle.initial_state) {
    case InitialState::ground:
      return DensityMatrix::pure(basis.ground);
    case InitialState::excited:
      return DensityMatrix::pure(basis.excited);
    case InitialState::plus:
      return DensityMatrix::pure((basis.ground + basis.excited) / std::sqrt(2.0));
  }
  throw InvalidArgument("unknown initial state");
}

std::string_view to_string(InitialState state) {
  switch (state) {
    case InitialState::ground:
      return "ground";
    case InitialState::excited:
      return "excited";
    case InitialState::plus:
      return "plus";
  }
  return "unknown";
}

}  // namespace ottoforge::cli
