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

#include "ottoforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "ottoforge/errors.hpp"

namespace ottoforge {

namespace pauli {
Matrix2c identity() { return Matrix2c::Identity(); }
Matrix2c x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2c y() {
  Matrix2c m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Matrix2c z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

double hermiticity_error(const Matrix2c& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const Matrix2c& entries) : m_(entries) {
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  if (hermiticity_error(entries) > kHermiticityTol * scale) {
    throw InvalidArgument("operator is not Hermitian");
  }
}

namespace {

double min_eig_hermitian(const Matrix2c& m) {
  // closed form for 2x2: (a+d)/2 - sqrt(((a-d)/2)^2 + |b|^2)
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b = std::abs(m(0, 1));
  return 0.5 * (a + d) - std::hypot(0.5 * (a - d), b);
}

}  // namespace

DensityMatrix::DensityMatrix(const Matrix2c& entries) : m_(entries) {
  std::ostringstream why;
  if (const double h = hermiticity_error(entries); h > kHermiticityTol) {
    why << "density matrix not Hermitian (error " << h << ")";
  } else if (const double t = std::abs(entries.trace() - 1.0); t > kTraceTol) {
    why << "density matrix trace deviates from 1 by " << t;
  } else if (const double e = min_eig_hermitian(entries); e < kPositivityTol) {
    why << "density matrix has negative eigenvalue " << e;
  } else {
    return;
  }
  throw StateInvariantError(why.str());
}

DensityMatrix DensityMatrix::sanitized(const Matrix2c& entries) {
  Matrix2c h = 0.5 * (entries + entries.adjoint());
  const Complex tr = h.trace();
  if (std::abs(tr) < 1e-300) {
    throw StateInvariantError("cannot normalize a traceless operator");
  }
  if (std::abs(tr - 1.0) > 1e-6) {
    std::ostringstream why;
    why << "state trace drifted to " << tr.real() << " during propagation";
    throw StateInvariantError(why.str());
  }
  h /= tr.real();
  return DensityMatrix(h);
}

DensityMatrix DensityMatrix::pure(const Vector2c& ket) {
  const double norm = ket.norm();
  if (norm == 0.0) {
    throw InvalidArgument("zero ket");
  }
  const Vector2c k = ket / norm;
  Matrix2c m = k * k.adjoint();
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix(m, Unchecked{});
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const { return min_eig_hermitian(m_); }

double DensityMatrix::von_neumann_entropy() const {
  const double a = m_(0, 0).real();
  const double d = m_(1, 1).real();
  const double r = std::hypot(0.5 * (a - d), std::abs(m_(0, 1)));
  double s = 0.0;
  for (double p : {0.5 * (a + d) + r, 0.5 * (a + d) - r}) {
    if (p > 0.0) {
      s -= p * std::log(p);
    }
  }
  return s;
}

Vector4c vectorize(const Matrix2c& op) {
  Vector4c v;
  v << op(0, 0), op(1, 0), op(0, 1), op(1, 1);
  return v;
}

Matrix2c devectorize(const Vector4c& v) {
  Matrix2c m;
  m << v(0), v(2), v(1), v(3);
  return m;
}

Matrix2c apply_map(const Superoperator& map, const Matrix2c& op) {
  return devectorize(map * vectorize(op));
}

namespace {

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

// vec(A X B) = (B^T kron A) vec(X)
Matrix4c sandwich(const Matrix2c& left, const Matrix2c& right) {
  return kron(right.transpose(), left);
}

}  // namespace

Superoperator lindblad_superop(const Matrix2c& jump, double rate) {
  if (!(rate >= 0.0)) {
    throw InvalidArgument("Lindblad rate must be non-negative");
  }
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c ldl = jump.adjoint() * jump;
  return rate * (sandwich(jump, jump.adjoint()) - 0.5 * sandwich(ldl, id) -
                 0.5 * sandwich(id, ldl));
}

Superoperator commutator_superop(const Matrix2c& hamiltonian) {
  const HermitianOperator h(hamiltonian);
  const Matrix2c id = Matrix2c::Identity();
  return Complex(0, -1) * (sandwich(h.matrix(), id) - sandwich(id, h.matrix()));
}

Superoperator double_commutator_superop(const Matrix2c& op, double weight) {
  const Matrix2c id = Matrix2c::Identity();
  const Matrix4c c = sandwich(op, id) - sandwich(id, op);
  return -weight * (c * c);
}

Matrix4c choi_matrix(const Superoperator& map) {
  Matrix4c choi = Matrix4c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix2c eij = Matrix2c::Zero();
      eij(i, j) = 1.0;
      choi.block<2, 2>(2 * i, 2 * j) = apply_map(map, eij);
    }
  }
  return 0.5 * (choi + choi.adjoint());
}

CptpReport cptp_check(const Superoperator& map) {
  CptpReport report;
  const Vector4c id = vectorize(Matrix2c::Identity());
  report.trace_error = (id.adjoint() * map - id.adjoint()).cwiseAbs().maxCoeff();
  report.trace_preserving = report.trace_error <= kTracePreservationTol;
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(choi_matrix(map), Eigen::EigenvaluesOnly);
  report.choi_min_eigenvalue = solver.eigenvalues().minCoeff();
  report.completely_positive = report.choi_min_eigenvalue >= -kChoiTol;
  return report;
}

double trace_annihilation_error(const Superoperator& generator) {
  const Vector4c id = vectorize(Matrix2c::Identity());
  return (id.adjoint() * generator).cwiseAbs().maxCoeff();
}

double hermiticity_preservation_error(const Superoperator& map) {
  double worst = 0.0;
  for (const Matrix2c& basis : {pauli::identity(), pauli::x(), pauli::y(), pauli::z()}) {
    worst = std::max(worst, hermiticity_error(apply_map(map, basis)));
  }
  return worst;
}

Superoperator expm(const Superoperator& generator) { return generator.exp(); }

double trace_distance(const Matrix2c& a, const Matrix2c& b) {
  Matrix2c d = a - b;
  d = (0.5 * (d + d.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix2c> solver(d, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ottoforge
