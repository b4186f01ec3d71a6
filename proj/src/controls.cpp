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

#include "ottoforge/controls.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ottoforge/errors.hpp"

namespace ottoforge {

void RampSpec::validate() const {
  if (!(duration > 0.0)) {
    throw InvalidArgument("ramp duration must be positive");
  }
}

namespace {

double ramp_fraction(const RampSpec& spec, double t) {
  spec.validate();
  // a few ulps of slack so grid points computed as k * dt land inside
  const double slack = 1e-12 * spec.duration;
  if (t < -slack || t > spec.duration + slack) {
    std::ostringstream why;
    why << "time " << t << " outside ramp interval [0, " << spec.duration << "]";
    throw OutOfRange(why.str());
  }
  return std::clamp(t / spec.duration, 0.0, 1.0);
}

}  // namespace

double ramp_value(const RampSpec& spec, double t) {
  const double s = ramp_fraction(spec, t);
  return (3.0 * s * s - 2.0 * s * s * s) * (spec.omega_z_end - spec.omega_z_start) +
         spec.omega_z_start;
}

double ramp_rate(const RampSpec& spec, double t) {
  const double s = ramp_fraction(spec, t);
  return 6.0 * s * (1.0 - s) * (spec.omega_z_end - spec.omega_z_start) / spec.duration;
}

MixingAngle mixing_angle(double omega_x, double omega_z) {
  if (!(omega_x > 0.0)) {
    throw InvalidArgument("omega_x must be positive");
  }
  // atan2 keeps theta in (0, pi) and continuous through Omega_z = 0
  return {std::atan2(omega_x, omega_z), std::hypot(omega_x, omega_z)};
}

Matrix2c EnergyBasis::rotation() const {
  Matrix2c r;
  r.col(0) = excited;
  r.col(1) = ground;
  return r;
}

EnergyBasis energy_basis(double omega_x, double omega_z) {
  const MixingAngle angle = mixing_angle(omega_x, omega_z);
  const double c = std::cos(0.5 * angle.theta);
  const double s = std::sin(0.5 * angle.theta);
  EnergyBasis basis;
  basis.excited << c, s;
  basis.ground << -s, c;
  basis.splitting = angle.splitting;
  basis.theta = angle.theta;
  return basis;
}

Matrix2c system_hamiltonian(double omega_x, double omega_z) {
  const double omega = std::hypot(omega_x, omega_z);
  return 0.5 * (omega * pauli::identity() + omega_x * pauli::x() + omega_z * pauli::z());
}

double sta_field(double omega_x, const RampSpec& spec, double t) {
  const double oz = ramp_value(spec, t);
  return -omega_x * ramp_rate(spec, t) / (omega_x * omega_x + oz * oz);
}

ControlField::ControlField(double omega_x, double omega_z, std::optional<RampSpec> ramp,
                           bool counterdiabatic)
    : omega_x_(omega_x),
      omega_z_static_(omega_z),
      ramp_(std::move(ramp)),
      counterdiabatic_(counterdiabatic) {
  if (!(omega_x_ > 0.0)) {
    throw InvalidArgument("omega_x must be positive");
  }
  if (ramp_) {
    ramp_->validate();
  }
}

ControlField ControlField::constant(double omega_x, double omega_z) {
  return ControlField(omega_x, omega_z, std::nullopt, false);
}

ControlField ControlField::ramped(double omega_x, const RampSpec& ramp, bool counterdiabatic) {
  return ControlField(omega_x, ramp.omega_z_start, ramp, counterdiabatic);
}

double ControlField::omega_z(double t) const {
  return ramp_ ? ramp_value(*ramp_, t) : omega_z_static_;
}

double ControlField::omega_z_rate(double t) const {
  return ramp_ ? ramp_rate(*ramp_, t) : 0.0;
}

double ControlField::omega_y(double t) const {
  return (ramp_ && counterdiabatic_) ? sta_field(omega_x_, *ramp_, t) : 0.0;
}

Matrix2c ControlField::system_hamiltonian(double t) const {
  return ottoforge::system_hamiltonian(omega_x_, omega_z(t));
}

Matrix2c ControlField::driving_hamiltonian(double t) const {
  Matrix2c h = system_hamiltonian(t);
  if (counterdiabatic_) {
    h += 0.5 * omega_y(t) * pauli::y();
  }
  return h;
}

}  // namespace ottoforge
