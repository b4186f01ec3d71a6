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

// Monte-Carlo check of the noise dissipators. Each trajectory evolves under
// H(t) + sum_j xi_j(t) K_j with white noise xi_j, one sampled Hamiltonian
// exponential per step; averaging over trajectories should reproduce the
// master-equation propagator.
//
// Per step the noise is held at xi ~ N(0, 2 lambda_j / dt). With
// K_j = Omega_j sigma_j / 2 this averages to
// -(Omega_j^2 / 4) lambda_j [sigma_j, [sigma_j, .]]; the lubrication channel
// uses K = sigma_z' with rate lambda_QL.

#pragma once

#include <array>
#include <cstdint>

#include "ottoforge/linalg.hpp"
#include "ottoforge/propagation.hpp"

namespace ottoforge {

struct DtCriterion {
  double value = 0.0;  // max over the stroke of sum_j lambda_j Omega_j^2 dt
  bool warn = false;   // value > kDtWarn
};

constexpr double kDtWarn = 0.1;
constexpr double kDtFail = 1.0;

/// Throws StepSizeError above kDtFail.
DtCriterion dt_criterion(const StrokeConfig& stroke, double dt);

/// Number of steps for a dt that must divide the stroke duration.
int oracle_steps(const StrokeConfig& stroke, double dt);

/// One noise realisation; the result is a unitary image of `initial`.
/// Strokes coupled to a bath (alpha > 0) are rejected.
Matrix2c sample_trajectory(const StrokeConfig& stroke, const DensityMatrix& initial, double dt,
                           std::uint64_t seed);

/// Seed of trajectory k under a master seed (splitmix64 of master + k).
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t k);

struct TrajectoryRun {
  int n_trajectories = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  Matrix2c mean_state = Matrix2c::Zero();
  /// Standard errors of rho_00, Re rho_01, Im rho_01.
  std::array<double, 3> entry_std_error{};
  double std_error = 0.0;  // root sum of squares of entry_std_error
  Matrix2c master_state = Matrix2c::Zero();
  double comparison = 0.0;  // trace distance mean_state vs master_state
  DtCriterion criterion;
};

/// Averages n >= 100 trajectories and compares with the master equation.
TrajectoryRun noise_average(const StrokeConfig& stroke, const DensityMatrix& initial, int n,
                            double dt, std::uint64_t seed, int threads = 1);

struct OracleReport {
  TrajectoryRun run;         // at dt
  double refined_gap = 0.0;  // trace distance between dt and dt/2 means
  double allowance = 0.0;    // C dt estimate, 2 * refined_gap
  double threshold = 0.0;    // 3 std_error + allowance
  bool passed = false;
};

/// noise_average at dt plus a run at dt / 2 driven by the same noise paths.
OracleReport oracle_check(const StrokeConfig& stroke, const DensityMatrix& initial, int n,
                          double dt, std::uint64_t seed, int threads = 1);

struct DephasingFit {
  double rate = 0.0;       // fitted coefficient of -(1/4)[sigma_z, [sigma_z, .]]
  double std_error = 0.0;
  double expected = 0.0;   // lambda_z Omega_z^2
  bool consistent = false; // |rate - expected| <= 3 std_error
};

/// Fits the dephasing rate of a bathless, z-noise-only isochore to the
/// trajectory mean of `run` by Gauss-Newton on the three state coordinates.
DephasingFit fit_dephasing_rate(const StrokeConfig& isochore, const DensityMatrix& initial,
                                const TrajectoryRun& run);

}  // namespace ottoforge
