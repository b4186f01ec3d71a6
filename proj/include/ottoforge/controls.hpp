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

// Control protocols for the driven qubit
//
//   H_S(t) = 1/2 (Omega(t) 1 + Omega_x sigma_x + Omega_z(t) sigma_z),
//   Omega(t) = sqrt(Omega_x^2 + Omega_z(t)^2),
//
// with a cubic Omega_z ramp on the isentropes and an optional counterdiabatic
// field 1/2 Omega_y(t) sigma_y. Everything is evaluated analytically.

#pragma once

#include <optional>

#include "ottoforge/linalg.hpp"

namespace ottoforge {

/// Cubic ramp Omega_z(s) = (3s^2 - 2s^3)(end - start) + start, s = t / duration.
struct RampSpec {
  double omega_z_start = 0.0;
  double omega_z_end = 0.0;
  double duration = 1.0;

  void validate() const;
};

/// Throws OutOfRange when t lies outside [0, duration].
double ramp_value(const RampSpec& spec, double t);
double ramp_rate(const RampSpec& spec, double t);

struct MixingAngle {
  double theta = 0.0;      // in (0, pi); pi/2 at Omega_z = 0
  double splitting = 0.0;  // Omega = sqrt(Omega_x^2 + Omega_z^2)
};

MixingAngle mixing_angle(double omega_x, double omega_z);

/// Instantaneous energy eigenbasis of H_S, obtained by rotating the computational
/// basis with R = exp(-i theta sigma_y / 2).
struct EnergyBasis {
  Vector2c ground;    // eigenvalue 0
  Vector2c excited;   // eigenvalue Omega
  double splitting = 0.0;
  double theta = 0.0;

  /// Kets indexed by level: 0 = ground, 1 = excited.
  const Vector2c& ket(int level) const { return level == 0 ? ground : excited; }
  double energy(int level) const { return level == 0 ? 0.0 : splitting; }
  Matrix2c rotation() const;
};

EnergyBasis energy_basis(double omega_x, double omega_z);

/// Control fields on one stroke. Omega_z is either constant (isochore) or
/// follows a ramp (isentrope); Omega_y is the counterdiabatic field and is
/// non-zero only for ramped fields with the shortcut enabled.
class ControlField {
 public:
  static ControlField constant(double omega_x, double omega_z);
  static ControlField ramped(double omega_x, const RampSpec& ramp, bool counterdiabatic);

  double omega_x() const { return omega_x_; }
  double omega_z(double t) const;
  double omega_z_rate(double t) const;
  double omega_y(double t) const;
  bool counterdiabatic() const { return counterdiabatic_; }
  const std::optional<RampSpec>& ramp() const { return ramp_; }

  /// H_S(t), including the Omega(t)/2 identity offset.
  Matrix2c system_hamiltonian(double t) const;
  /// H_S(t) + H_STA(t).
  Matrix2c driving_hamiltonian(double t) const;

 private:
  ControlField(double omega_x, double omega_z, std::optional<RampSpec> ramp, bool counterdiabatic);

  double omega_x_;
  double omega_z_static_;
  std::optional<RampSpec> ramp_;
  bool counterdiabatic_;
};

/// H_S for fixed amplitudes.
Matrix2c system_hamiltonian(double omega_x, double omega_z);

/// Counterdiabatic amplitude Omega_y = -Omega_x dOmega_z/dt / (Omega_x^2 + Omega_z^2).
double sta_field(double omega_x, const RampSpec& spec, double t);

}  // namespace ottoforge
