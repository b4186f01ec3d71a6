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

// Non-unitary generators: the weak-coupling thermal bath, the noise-averaged
// white control noise, and the lubricating pure-dephasing field.

#pragma once

#include "ottoforge/linalg.hpp"

namespace ottoforge {

/// Ohmic bath J(w) = alpha w exp(-w / omega_cutoff) at inverse temperature beta.
/// alpha = 0 decouples the bath.
struct BathParams {
  double alpha = 0.01;
  double beta = 1.0;
  double omega_cutoff = 1e4;

  void validate() const;
};

/// White-noise strengths per control axis, E[xi(t) xi(s)] = lambda delta(t - s),
/// plus the constant strength of the lubricating dephasing field.
struct NoiseSpec {
  double lambda_z = 0.0;
  double lambda_y = 0.0;
  double lambda_x = 0.0;
  double ql_strength = 0.0;

  /// One lambda for the z and y controls; x stays noiseless unless requested.
  static NoiseSpec shared(double lambda, bool noisy_x = false);

  void validate() const;
};

double spectral_density(double omega, const BathParams& bath);

/// Bose occupation 1 / (exp(beta omega) - 1).
double occupation(double omega, double beta);

struct BathRates {
  double up = 0.0;         // gamma_+, |g> -> |e>
  double down = 0.0;       // gamma_-, |e> -> |g>
  double dephasing = 0.0;  // gamma_0
};

BathRates bath_rates(double omega, double theta, const BathParams& bath);

/// Thermal dissipator for the static Hamiltonian H_S(omega_x, omega_z); jump
/// operators live in the energy eigenbasis and are rotated to the lab frame.
Superoperator bath_dissipator(double omega_x, double omega_z, const BathParams& bath);

/// Instantaneous amplitudes Omega_j(t) of the noisy controls.
struct NoiseAmplitudes {
  double z = 0.0;
  double y = 0.0;
  double x = 0.0;
};

/// -sum_j (Omega_j^2 / 4) lambda_j [sigma_j, [sigma_j, .]].
Superoperator control_noise_dissipator(const NoiseAmplitudes& amplitudes, const NoiseSpec& noise);

/// -lambda_QL [sigma_z', [sigma_z', .]] with sigma_z' = cos(theta) sigma_z + sin(theta) sigma_x.
Superoperator ql_dissipator(double theta, double ql_strength);

}  // namespace ottoforge
