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

// The four-stroke Otto cycle in its limit cycle.
//
// Vertex labels follow the stroke order: 0 -(compression)-> 1 -(hot isochore)->
// 2 -(expansion)-> 3 -(cold isochore)-> 0. Energy flowing into the qubit is
// positive, so an engine has W01 + W23 < 0 and Q_H > 0.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ottoforge/linalg.hpp"
#include "ottoforge/propagation.hpp"

namespace ottoforge {

struct CycleConfig {
  double omega_x = 1.0;
  double omega_z_cold = 0.0;
  double omega_z_hot = 0.0;
  double tau_cycle = 1.0;  // total; each stroke gets tau_cycle / 4
  double beta_h = 1.0;
  double beta_c = 1.0;
  double alpha = 0.01;
  std::optional<double> omega_cutoff;  // default 100 * max(omega_z_hot, omega_x)
  NoiseSpec noise;
  Enhancement enhancement = Enhancement::NA;
  int substeps = kDefaultSubsteps;

  void validate() const;

  double stroke_time() const { return tau_cycle / 4.0; }
  double omega_cold() const;
  double omega_hot() const;
  double cutoff() const;
  BathParams bath(double beta) const;
  StrokeConfig stroke(StrokeKind kind) const;
};

struct CyclePropagators {
  std::array<PropagatorResult, 4> strokes;  // indexed by StrokeKind order
  Superoperator cycle = Superoperator::Identity();

  const Superoperator& stroke(StrokeKind kind) const {
    return strokes[static_cast<int>(kind)].propagator;
  }
};

CyclePropagators build_cycle(const CycleConfig& config);

/// V_30 V_23 V_12 V_01.
Superoperator cycle_propagator(const CycleConfig& config);

struct LimitCycle {
  DensityMatrix state;             // vertex 0
  Complex unit_eigenvalue;         // eigenvalue closest to 1
  double second_eigenvalue_modulus = 0.0;
  double fixed_point_residual = 0.0;  // trace distance between V rho and rho
};

constexpr double kUnitEigenvalueTol = 1e-6;
constexpr double kFixedPointTol = 1e-8;
constexpr double kUniquenessGap = 1e-10;

/// Fixed point of a cycle propagator from its eigendecomposition.
///
/// Throws NoLimitCycleError when no eigenvalue lies within 1e-6 of 1 (or the
/// fixed point does not verify) and NonUniqueLimitCycleError when a second
/// eigenvalue has modulus >= 1 - 1e-10.
LimitCycle find_limit_cycle(const Superoperator& cycle);

DensityMatrix limit_cycle_state(const CycleConfig& config);

/// exp(-beta H_S) / Z for H_S(omega_x, omega_z).
DensityMatrix gibbs_state(double omega_x, double omega_z, double beta);

/// State after `cycles` applications of the cycle, trace renormalized each time.
Matrix2c power_iterate(const Superoperator& cycle, const DensityMatrix& start, int cycles);

/// Number of (trace-renormalized) cycle applications after which `start` lies within `tol` (trace
/// distance) of `target`, or nullopt after `max_cycles`.
std::optional<int> cycles_to_converge(const Superoperator& cycle, const DensityMatrix& start,
                                      const DensityMatrix& target, double tol = kFixedPointTol,
                                      int max_cycles = 100000);

struct CyclePerformance {
  double w01 = 0.0;
  double q_h = 0.0;
  double w23 = 0.0;
  double q_c = 0.0;
  double power = 0.0;                // -(w01 + w23) / tau_cycle
  std::optional<double> efficiency;  // only when q_h > 0 and power > 0
  double entropy_rate = 0.0;         // (-beta_h q_h - beta_c q_c) / tau_cycle
  std::array<Matrix2c, 4> vertex_states;
  std::array<double, 4> vertex_energies{};
  double balance_residual = 0.0;  // |w01 + q_h + w23 + q_c|
  double energy_scale = 1.0;      // max(Omega_H, Omega_x), for zero tolerances
};

/// Propagators, limit cycle and energetics of one configuration.
struct CycleSolution {
  CycleConfig config;
  CyclePropagators propagators;
  LimitCycle limit;
  CyclePerformance performance;
};

CycleSolution solve_cycle(const CycleConfig& config);

CyclePerformance energetics(const CycleConfig& config);

struct ClosedFormBenchmarks {
  double w_max = 0.0;     // extractable work, positive in the engine regime
  double q_h_max = 0.0;
  double eta_otto = 0.0;
  double eta_carnot = 0.0;
};

/// Full-thermalization, adiabatic-driving limits of the cycle.
ClosedFormBenchmarks closed_form_benchmarks(const CycleConfig& config);

struct SweepRow {
  CycleConfig config;
  std::optional<CyclePerformance> performance;
  std::string error;  // empty on success

  bool ok() const { return performance.has_value(); }
};

/// Evaluates every config; rows keep input order, and a failing row records
/// its error instead of aborting the sweep.
std::vector<SweepRow> sweep(std::span<const CycleConfig> configs, int threads = 1);

}  // namespace ottoforge
