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

// TOML run configuration, schema_version = 1. All energies are in units of
// Omega_x (hbar = k_B = 1); temperatures are given as T, not beta.
//
//   schema_version = 1
//   [engine]   omega_x, omega_cold | omega_z_cold, omega_hot | omega_z_hot,
//              temperature_cold, temperature_hot, alpha, omega_cutoff, substeps
//   [noise]    lambda (number or list, required), x_axis_noise
//   [sweep]    modes, tau (list) | tau_grid {min, max, count, spacing}, lambda_ql
//   [fpms]     initial_populations, distributions
//   [oracle]   trajectories, steps, tau, strokes, mode, lambda, lambda_ql,
//              initial_state, seed

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ottoforge/engine.hpp"
#include "ottoforge/fpms.hpp"
#include "ottoforge/propagation.hpp"

namespace ottoforge::cli {

/// Malformed or schema-violating configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kSchemaVersion = 1;

struct EngineSpec {
  double omega_x = 1.0;
  double omega_z_cold = 0.0;
  double omega_z_hot = 0.0;
  double temperature_cold = 1.0;
  double temperature_hot = 1.0;
  double alpha = 0.01;
  std::optional<double> omega_cutoff;
  int substeps = kDefaultSubsteps;
};

struct SweepSpec {
  std::vector<Enhancement> modes{Enhancement::NA, Enhancement::STA};
  std::vector<double> taus;
  std::vector<double> lambda_ql{0.0};
};

struct FpmsSpec {
  InitialPopulations initial_populations = InitialPopulations::unmonitored;
  std::optional<std::string> distributions;  // JSON dump path
};

enum class InitialState { ground, excited, plus };

struct OracleSpec {
  int trajectories = 10000;
  int steps = 4096;  // per stroke
  double tau = 4.0;  // cycle time; each stroke lasts tau / 4
  std::vector<StrokeKind> strokes{StrokeKind::compression};
  Enhancement mode = Enhancement::NA;
  std::optional<double> lambda;  // default: first noise lambda
  double lambda_ql = 0.0;
  InitialState initial_state = InitialState::ground;
  std::uint64_t seed = 1;
};

struct RunConfig {
  EngineSpec engine;
  std::vector<double> lambdas;
  bool x_axis_noise = false;
  SweepSpec sweep;
  FpmsSpec fpms;
  OracleSpec oracle;
};

RunConfig parse_run_config(std::string_view text, std::string_view source = "<string>");
RunConfig load_run_config(const std::filesystem::path& path);

struct GridPoint {
  Enhancement mode = Enhancement::NA;
  double tau = 0.0;
  double lambda = 0.0;
  double lambda_ql = 0.0;
  CycleConfig config;
};

/// CycleConfig for one point; validated.
CycleConfig make_cycle_config(const RunConfig& run, Enhancement mode, double tau, double lambda,
                              double lambda_ql);

/// Grid in deterministic order: mode, then lambda, then lambda_ql (QL only;
/// other modes use 0), then tau.
std::vector<GridPoint> sweep_grid(const RunConfig& run);

/// Oracle stroke: engine parameters at the oracle's tau, mode and noise, with
/// isochores decoupled from their baths.
StrokeConfig oracle_stroke(const RunConfig& run, StrokeKind kind);
DensityMatrix oracle_initial_state(const RunConfig& run, const StrokeConfig& stroke);

std::string_view to_string(InitialState state);

}  // namespace ottoforge::cli
