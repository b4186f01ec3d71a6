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

#include <cmath>
#include <random>

#include "ottoforge/engine.hpp"
#include "ottoforge/linalg.hpp"

namespace ottoforge::testing {

inline Matrix2c random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix2c m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = Complex(n(rng), n(rng));
  }
  return m;
}

inline Matrix2c random_hermitian(std::mt19937_64& rng) {
  const Matrix2c m = random_matrix(rng);
  return 0.5 * (m + m.adjoint());
}

inline DensityMatrix random_state(std::mt19937_64& rng) {
  const Matrix2c k = random_matrix(rng);
  Matrix2c rho = k * k.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::sanitized(rho);
}

inline double max_abs_diff(const Matrix2c& a, const Matrix2c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Omega_C = 100, Omega_H = 200, T_C = 10, T_H = 50, alpha = 0.01.
inline CycleConfig reference_engine(double tau, Enhancement mode = Enhancement::NA,
                                    double lambda = 0.0) {
  CycleConfig c;
  c.omega_x = 1.0;
  c.omega_z_cold = std::sqrt(100.0 * 100.0 - 1.0);
  c.omega_z_hot = std::sqrt(200.0 * 200.0 - 1.0);
  c.beta_c = 1.0 / 10.0;
  c.beta_h = 1.0 / 50.0;
  c.tau_cycle = tau;
  c.noise = NoiseSpec::shared(lambda);
  c.enhancement = mode;
  return c;
}

/// Same beta * Omega products with ten times smaller gaps, where finite-time
/// effects are large: Omega_C = 10, Omega_H = 20, T_C = 1, T_H = 5.
inline CycleConfig scaled_engine(double tau, Enhancement mode = Enhancement::NA,
                                 double lambda = 0.0, double lambda_ql = 0.0) {
  CycleConfig c;
  c.omega_x = 1.0;
  c.omega_z_cold = std::sqrt(10.0 * 10.0 - 1.0);
  c.omega_z_hot = std::sqrt(20.0 * 20.0 - 1.0);
  c.beta_c = 1.0;
  c.beta_h = 0.2;
  c.tau_cycle = tau;
  c.noise = NoiseSpec::shared(lambda);
  c.noise.ql_strength = lambda_ql;
  c.enhancement = mode;
  return c;
}

/// Single Hamiltonian, single bath.
inline CycleConfig degenerate_engine(double tau = 4.0) {
  CycleConfig c;
  c.omega_x = 1.0;
  c.omega_z_cold = 5.0;
  c.omega_z_hot = 5.0;
  c.beta_c = 0.5;
  c.beta_h = 0.5;
  c.tau_cycle = tau;
  return c;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return out;
}

}  // namespace ottoforge::testing
