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

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ottoforge/controls.hpp"
#include "ottoforge/dissipators.hpp"
#include "ottoforge/linalg.hpp"

namespace ottoforge {

enum class StrokeKind { compression, hot_isochore, expansion, cold_isochore };

/// How the isentropes are driven: bare (non-adiabatic), with counterdiabatic
/// driving, or with quantum lubrication.
enum class Enhancement { NA, STA, QL };

std::string_view to_string(StrokeKind kind);
std::string_view to_string(Enhancement mode);
std::optional<Enhancement> parse_enhancement(std::string_view text);
std::optional<StrokeKind> parse_stroke_kind(std::string_view text);

bool is_isentrope(StrokeKind kind);

/// One stroke of the cycle. Isentropes carry a ramp and no bath; isochores
/// carry a bath and a frozen Omega_z.
struct StrokeConfig {
  StrokeKind kind = StrokeKind::compression;
  double duration = 0.0;
  double omega_x = 1.0;
  std::optional<RampSpec> ramp;  // isentropes only
  double omega_z = 0.0;          // isochores only
  std::optional<BathParams> bath;  // isochores only
  NoiseSpec noise;
  Enhancement enhancement = Enhancement::NA;  // ignored on isochores

  static StrokeConfig isentrope(StrokeKind kind, double omega_x, double omega_z_start,
                                double omega_z_end, double duration, const NoiseSpec& noise,
                                Enhancement enhancement);
  static StrokeConfig isochore(StrokeKind kind, double omega_x, double omega_z, double duration,
                               const BathParams& bath, const NoiseSpec& noise);

  /// Throws InvalidArgument when the fields are inconsistent with the kind.
  void validate() const;

  ControlField field() const;
  double omega_z_at(double t) const;
  double omega_z_start() const;
  double omega_z_end() const;
  bool lubricated() const;
  bool counterdiabatic() const;
};

/// Full generator at time t: -i[H_S (+ H_STA), .] + D_B + D_xi (+ D_QL).
Superoperator liouvillian(const StrokeConfig& stroke, double t);

struct PropagatorResult {
  Superoperator propagator = Superoperator::Identity();
  int substeps = 0;
  /// ||V(n) - V(2n)||_max, or 0 when not requested / not needed.
  double max_step_error_estimate = 0.0;
};

constexpr int kDefaultSubsteps = 1024;

/// Time-ordered product of midpoint-frozen exponentials,
///   V = exp(L(t_{n-1/2}) dt) ... exp(L(t_{1/2}) dt).
///
/// Static generators (isochores) collapse to a single exponential. The result
/// is CPTP-checked; a violation throws IntegrationAccuracyError.
PropagatorResult stroke_propagator(const StrokeConfig& stroke, int substeps = kDefaultSubsteps,
                                   bool estimate_error = false);

/// Propagator over [t_begin, t_end] using `steps` midpoint steps.
Superoperator interval_propagator(const StrokeConfig& stroke, double t_begin, double t_end,
                                  int steps);

struct StateSample {
  double t = 0.0;
  DensityMatrix rho;
  double energy = 0.0;  // Tr[H_S(t) rho]
};

/// States at `samples` uniform times from 0 to duration inclusive.
///
/// Each of the samples - 1 segments is integrated with
/// ceil(substeps / (samples - 1)) midpoint steps, so the final state equals
/// stroke_propagator(stroke, evolution_substeps(substeps, samples)) applied to rho.
std::vector<StateSample> evolve_state(const DensityMatrix& rho, const StrokeConfig& stroke,
                                      int samples, int substeps = kDefaultSubsteps);

int evolution_substeps(int substeps, int samples);

}  // namespace ottoforge
