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

#include "ottoforge/dissipators.hpp"

#include <cmath>
#include <numbers>

#include "ottoforge/controls.hpp"
#include "ottoforge/errors.hpp"

namespace ottoforge {

void BathParams::validate() const {
  if (!(alpha >= 0.0)) {
    throw InvalidArgument("bath coupling alpha must be non-negative");
  }
  if (!(beta > 0.0)) {
    throw InvalidArgument("bath inverse temperature must be positive");
  }
  if (!(omega_cutoff > 0.0)) {
    throw InvalidArgument("bath cutoff frequency must be positive");
  }
}

NoiseSpec NoiseSpec::shared(double lambda, bool noisy_x) {
  NoiseSpec spec;
  spec.lambda_z = lambda;
  spec.lambda_y = lambda;
  spec.lambda_x = noisy_x ? lambda : 0.0;
  return spec;
}

void NoiseSpec::validate() const {
  if (!(lambda_z >= 0.0 && lambda_y >= 0.0 && lambda_x >= 0.0)) {
    throw InvalidArgument("noise strengths must be non-negative");
  }
  if (!(ql_strength >= 0.0)) {
    throw InvalidArgument("lubrication strength must be non-negative");
  }
}

double spectral_density(double omega, const BathParams& bath) {
  if (!(omega >= 0.0)) {
    throw InvalidArgument("spectral density needs a non-negative frequency");
  }
  bath.validate();
  return bath.alpha * omega * std::exp(-omega / bath.omega_cutoff);
}

double occupation(double omega, double beta) {
  const double x = omega * beta;
  if (!(omega > 0.0) || !(beta > 0.0)) {
    throw InvalidArgument("occupation needs beta * omega > 0");
  }
  return 1.0 / std::expm1(x);
}

BathRates bath_rates(double omega, double theta, const BathParams& bath) {
  if (!(omega > 0.0)) {
    throw InvalidArgument("bath rates need a positive splitting");
  }
  bath.validate();
  const double j = spectral_density(omega, bath);
  const double n = occupation(omega, bath.beta);
  const double cos2 = std::cos(theta) * std::cos(theta);
  const double sin2 = std::sin(theta) * std::sin(theta);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return {j * n * two_pi * cos2, j * (1.0 + n) * two_pi * cos2,
          two_pi * (bath.alpha / bath.beta) * sin2};
}

Superoperator bath_dissipator(double omega_x, double omega_z, const BathParams& bath) {
  bath.validate();
  if (bath.alpha == 0.0) {
    return Superoperator::Zero();
  }
  const EnergyBasis basis = energy_basis(omega_x, omega_z);
  const BathRates rates = bath_rates(basis.splitting, basis.theta, bath);
  const Matrix2c raise = basis.excited * basis.ground.adjoint();
  const Matrix2c lower = basis.ground * basis.excited.adjoint();
  const Matrix2c dephase =
      basis.excited * basis.excited.adjoint() - basis.ground * basis.ground.adjoint();
  return lindblad_superop(raise, rates.up) + lindblad_superop(lower, rates.down) +
         lindblad_superop(dephase, rates.dephasing);
}

Superoperator control_noise_dissipator(const NoiseAmplitudes& amplitudes, const NoiseSpec& noise) {
  noise.validate();
  Superoperator out = Superoperator::Zero();
  const auto add = [&out](const Matrix2c& sigma, double amplitude, double lambda) {
    if (lambda != 0.0 && amplitude != 0.0) {
      out += double_commutator_superop(sigma, 0.25 * amplitude * amplitude * lambda);
    }
  };
  add(pauli::z(), amplitudes.z, noise.lambda_z);
  add(pauli::y(), amplitudes.y, noise.lambda_y);
  add(pauli::x(), amplitudes.x, noise.lambda_x);
  return out;
}

Superoperator ql_dissipator(double theta, double ql_strength) {
  if (!(ql_strength >= 0.0)) {
    throw InvalidArgument("lubrication strength must be non-negative");
  }
  if (ql_strength == 0.0) {
    return Superoperator::Zero();
  }
  const Matrix2c sz_rot = std::cos(theta) * pauli::z() + std::sin(theta) * pauli::x();
  return double_commutator_superop(sz_rot, ql_strength);
}

}  // namespace ottoforge
