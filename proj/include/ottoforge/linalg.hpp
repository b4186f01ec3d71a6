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

// Dense 2x2 / 4x4 complex algebra for a single qubit and its superoperators.
//
// Vectorization is column stacking throughout: vec(A rho B) = (B^T kron A) vec(rho).
// Energies are in units of the tunnelling Omega_x, with hbar = k_B = 1.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ottoforge {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;
using Matrix4c = Eigen::Matrix4cd;

/// 4x4 map on column-stacked 2x2 operators. Generators (Liouvillians,
/// dissipators) and propagators share the representation.
using Superoperator = Matrix4c;

namespace pauli {
Matrix2c identity();
Matrix2c x();
Matrix2c y();
Matrix2c z();
}  // namespace pauli

/// Largest entry of |A - A^dagger|.
double hermiticity_error(const Matrix2c& a);

/// 2x2 Hermitian operator, e.g. a Hamiltonian. Hermitian to 1e-12 (relative to
/// the operator scale for large entries).
class HermitianOperator {
 public:
  static constexpr double kHermiticityTol = 1e-12;

  explicit HermitianOperator(const Matrix2c& entries);

  const Matrix2c& matrix() const { return m_; }

 private:
  Matrix2c m_;
};

/// Qubit state: Hermitian, unit trace and positive semidefinite.
///
/// Construction validates the invariants and throws StateInvariantError when
/// one fails. Small negative eigenvalues (down to -1e-9) are tolerated since
/// propagation is CPTP only to integration accuracy.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = -1e-9;

  explicit DensityMatrix(const Matrix2c& entries);

  /// Hermitizes and renormalizes the trace before validating. For states that
  /// come out of a propagator and carry roundoff.
  static DensityMatrix sanitized(const Matrix2c& entries);

  /// |psi><psi| for a (not necessarily normalized) ket.
  static DensityMatrix pure(const Vector2c& ket);

  const Matrix2c& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  double purity() const;
  double min_eigenvalue() const;
  double von_neumann_entropy() const;

 private:
  struct Unchecked {};
  DensityMatrix(const Matrix2c& entries, Unchecked) : m_(entries) {}

  Matrix2c m_;
};

Vector4c vectorize(const Matrix2c& op);
Matrix2c devectorize(const Vector4c& v);

/// Applies a superoperator to a 2x2 operator.
Matrix2c apply_map(const Superoperator& map, const Matrix2c& op);

/// gamma (L rho L^dag - 1/2 {L^dag L, rho}). Throws InvalidArgument for gamma < 0.
Superoperator lindblad_superop(const Matrix2c& jump, double rate);

/// -i [H, .]. Throws InvalidArgument when H is not Hermitian.
Superoperator commutator_superop(const Matrix2c& hamiltonian);

/// -weight [S, [S, .]]. The building block of white-noise and dephasing generators.
Superoperator double_commutator_superop(const Matrix2c& op, double weight);

/// Choi matrix sum_ij |i><j| kron V(|i><j|), Hermitized.
Matrix4c choi_matrix(const Superoperator& map);

struct CptpReport {
  bool trace_preserving = false;
  double trace_error = 0.0;          // max |vec(1)^dag V - vec(1)^dag|
  double choi_min_eigenvalue = 0.0;  // complete positivity needs >= -kChoiTol
  bool completely_positive = false;

  bool ok() const { return trace_preserving && completely_positive; }
};

constexpr double kTracePreservationTol = 1e-8;
constexpr double kChoiTol = 1e-7;

CptpReport cptp_check(const Superoperator& map);

/// vec(1)^dag G, which vanishes for trace-annihilating generators.
double trace_annihilation_error(const Superoperator& generator);

/// Largest Hermiticity error of V applied to the Hermitian basis {1, sx, sy, sz}.
double hermiticity_preservation_error(const Superoperator& map);

/// Matrix exponential by scaling and squaring with a Pade approximant.
Superoperator expm(const Superoperator& generator);

/// 1/2 ||a - b||_1 for Hermitian a, b.
double trace_distance(const Matrix2c& a, const Matrix2c& b);

/// Max-abs entry norm, used for superoperator comparisons.
double max_abs(const Matrix4c& m);

}  // namespace ottoforge
