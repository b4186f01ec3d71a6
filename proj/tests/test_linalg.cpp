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

#include <doctest.h>

#include <random>

#include "ottoforge/errors.hpp"
#include "ottoforge/linalg.hpp"
#include "support.hpp"

using namespace ottoforge;
using ottoforge::testing::random_hermitian;
using ottoforge::testing::random_matrix;
using ottoforge::testing::random_state;

TEST_SUITE("linalg") {

TEST_CASE("identity vectorizes to (1, 0, 0, 1)") {
  const Vector4c v = vectorize(pauli::identity());
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(0.0));
  CHECK(v(2) == Complex(0.0));
  CHECK(v(3) == Complex(1.0));
}

TEST_CASE("column stacking puts a10 second") {
  Matrix2c a;
  a << 1.0, 2.0, 3.0, 4.0;
  const Vector4c v = vectorize(a);
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
}

TEST_CASE("vectorize round trip is exact") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Matrix2c a = random_hermitian(rng);
    CHECK(devectorize(vectorize(a)) == a);
  }
}

TEST_CASE("Hilbert-Schmidt inner product matches vector inner product") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Matrix2c a = random_matrix(rng);
    const Matrix2c b = random_matrix(rng);
    const Complex lhs = (a.adjoint() * b).trace();
    const Complex rhs = vectorize(a).dot(vectorize(b));  // dot conjugates the first
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("column-stacking identity vec(A rho B) = (B^T kron A) vec(rho)") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const Matrix2c a = random_matrix(rng);
    const Matrix2c rho = random_matrix(rng);
    const Matrix2c b = random_matrix(rng);
    Superoperator k;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) k.block<2, 2>(2 * r, 2 * c) = b.transpose()(r, c) * a;
    }
    CHECK((k * vectorize(rho) - vectorize(a * rho * b)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lindblad_superop acts as L rho L^dag - {L^dag L, rho} / 2") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const Matrix2c l = random_matrix(rng);
    const Matrix2c rho = random_hermitian(rng);
    const double rate = 0.37;
    const Matrix2c ldl = l.adjoint() * l;
    const Matrix2c expected = rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    CHECK(testing::max_abs_diff(apply_map(lindblad_superop(l, rate), rho), expected) < 1e-12);
    CHECK(trace_annihilation_error(lindblad_superop(l, rate)) < 1e-10);
  }
}

TEST_CASE("lindblad_superop with zero rate is zero") {
  std::mt19937_64 rng(19);
  CHECK(max_abs(lindblad_superop(random_matrix(rng), 0.0)) == 0.0);
}

TEST_CASE("lowering jump on the excited state") {
  // |g><e| acting on |e><e| moves population e -> g at rate gamma
  Matrix2c lower = Matrix2c::Zero();
  lower(1, 0) = 1.0;  // |g> = (0, 1), |e> = (1, 0) in this check
  Matrix2c excited = Matrix2c::Zero();
  excited(0, 0) = 1.0;
  Matrix2c ground = Matrix2c::Zero();
  ground(1, 1) = 1.0;
  const double gamma = 2.5;
  const Matrix2c out = apply_map(lindblad_superop(lower, gamma), excited);
  CHECK(testing::max_abs_diff(out, gamma * (ground - excited)) < 1e-14);
}

TEST_CASE("negative rate is rejected") {
  CHECK_THROWS_AS(lindblad_superop(pauli::z(), -1.0), InvalidArgument);
}

TEST_CASE("commutator_superop acts as -i[H, rho]") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const Matrix2c h = random_hermitian(rng);
    const Matrix2c rho = random_hermitian(rng);
    const Matrix2c expected = Complex(0.0, -1.0) * (h * rho - rho * h);
    CHECK(testing::max_abs_diff(apply_map(commutator_superop(h), rho), expected) < 1e-12);
    CHECK(trace_annihilation_error(commutator_superop(h)) < 1e-10);
  }
}

TEST_CASE("commuting diagonal operators give zero action") {
  Matrix2c h = Matrix2c::Zero();
  h(0, 0) = 3.0;
  h(1, 1) = -1.0;
  Matrix2c rho = Matrix2c::Zero();
  rho(0, 0) = 0.3;
  rho(1, 1) = 0.7;
  CHECK(apply_map(commutator_superop(h), rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sigma_z precession: coherence rotates at Omega_z") {
  const double omega_z = 1.7;
  const Matrix2c h = 0.5 * omega_z * pauli::z();
  Matrix2c rho = 0.5 * pauli::identity();
  rho(0, 1) = Complex(0.2, 0.1);
  rho(1, 0) = std::conj(rho(0, 1));
  const Matrix2c dot = apply_map(commutator_superop(h), rho);
  CHECK(std::abs(dot(0, 1) - Complex(0.0, -omega_z) * rho(0, 1)) < 1e-14);
}

TEST_CASE("non-Hermitian Hamiltonian is rejected") {
  Matrix2c h = Matrix2c::Zero();
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(commutator_superop(h), InvalidArgument);
  CHECK_THROWS_AS(HermitianOperator{h}, InvalidArgument);
}

TEST_CASE("double commutator annihilates trace and preserves Hermiticity") {
  std::mt19937_64 rng(29);
  const Superoperator d = double_commutator_superop(random_hermitian(rng), 0.8);
  CHECK(trace_annihilation_error(d) < 1e-10);
  CHECK(hermiticity_preservation_error(expm(d)) < 1e-10);
}

TEST_CASE("identity channel is CPTP with Choi minimum 0") {
  const CptpReport r = cptp_check(Superoperator::Identity());
  CHECK(r.ok());
  CHECK(r.choi_min_eigenvalue == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("forward Lindblad evolution is CPTP, backward is not CP") {
  Matrix2c lower = Matrix2c::Zero();
  lower(1, 0) = 1.0;
  const Superoperator gen = lindblad_superop(lower, 1.0) + lindblad_superop(pauli::z(), 0.3);
  for (double t : {0.01, 0.5, 3.0}) {
    CHECK(cptp_check(expm(gen * t)).ok());
    const CptpReport back = cptp_check(expm(gen * -t));
    CHECK(back.trace_preserving);
    CHECK(back.choi_min_eigenvalue < -kChoiTol);
    CHECK_FALSE(back.ok());
  }
}

TEST_CASE("expm matches a closed-form unitary") {
  const double w = 0.9;
  const double t = 1.3;
  const Superoperator gen = commutator_superop(0.5 * w * pauli::x());
  // rotation exp(-i w t sigma_x / 2)
  const Matrix2c u = std::cos(0.5 * w * t) * pauli::identity() -
                     Complex(0.0, std::sin(0.5 * w * t)) * pauli::x();
  std::mt19937_64 rng(31);
  const Matrix2c rho = random_state(rng).matrix();
  CHECK(testing::max_abs_diff(apply_map(expm(gen * t), rho), u * rho * u.adjoint()) < 1e-12);
}

TEST_CASE("density matrix invariants") {
  Matrix2c bad_trace = 0.6 * pauli::identity();
  CHECK_THROWS_AS(DensityMatrix{bad_trace}, StateInvariantError);

  Matrix2c negative = Matrix2c::Zero();
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix{negative}, StateInvariantError);

  Matrix2c skew = 0.5 * pauli::identity();
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, StateInvariantError);

  Matrix2c tiny = Matrix2c::Zero();
  tiny(0, 0) = 1.0 + 5e-10;
  tiny(1, 1) = -5e-10;
  CHECK_NOTHROW(DensityMatrix{tiny});
}

TEST_CASE("pure states have unit purity and zero entropy") {
  Vector2c ket(Complex(1.0, 0.0), Complex(0.0, 2.0));
  const DensityMatrix rho = DensityMatrix::pure(ket);
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rho.von_neumann_entropy() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(DensityMatrix(0.5 * pauli::identity()).von_neumann_entropy() ==
        doctest::Approx(std::log(2.0)));
}

TEST_CASE("trace distance between orthogonal pure states is 1") {
  const DensityMatrix up = DensityMatrix::pure(Vector2c(1.0, 0.0));
  const DensityMatrix down = DensityMatrix::pure(Vector2c(0.0, 1.0));
  CHECK(trace_distance(up.matrix(), down.matrix()) == doctest::Approx(1.0));
}

}  // TEST_SUITE
