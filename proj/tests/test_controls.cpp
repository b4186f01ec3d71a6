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

#include <cmath>
#include <numbers>

#include "ottoforge/controls.hpp"
#include "ottoforge/errors.hpp"
#include "support.hpp"

using namespace ottoforge;

TEST_SUITE("controls") {

TEST_CASE("ramp endpoints, midpoint and rate") {
  const RampSpec r{100.0, 200.0, 2.5};
  CHECK(ramp_value(r, 0.0) == doctest::Approx(100.0));
  CHECK(ramp_value(r, 2.5) == doctest::Approx(200.0));
  CHECK(ramp_value(r, 1.25) == doctest::Approx(150.0));
  CHECK(ramp_rate(r, 0.0) == doctest::Approx(0.0));
  CHECK(ramp_rate(r, 2.5) == doctest::Approx(0.0));
  // d/dt of (3s^2 - 2s^3) at s = 1/2 is 1.5 / duration
  CHECK(ramp_rate(r, 1.25) == doctest::Approx(1.5 * 100.0 / 2.5));
}

TEST_CASE("ramp rate is the derivative of the ramp value") {
  const RampSpec r{20.0, 5.0, 3.0};
  const double h = 1e-6;
  for (double t : {0.3, 1.0, 1.7, 2.9}) {
    const double fd = (ramp_value(r, t + h) - ramp_value(r, t - h)) / (2.0 * h);
    CHECK(ramp_rate(r, t) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("ramp is monotone between its endpoints") {
  const RampSpec r{1.0, 4.0, 1.0};
  double prev = ramp_value(r, 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double v = ramp_value(r, i / 100.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("ramp rejects bad durations and times") {
  CHECK_THROWS_AS(ramp_value(RampSpec{1.0, 2.0, 0.0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(ramp_value(RampSpec{1.0, 2.0, 1.0}, 1.5), OutOfRange);
  CHECK_THROWS_AS(ramp_rate(RampSpec{1.0, 2.0, 1.0}, -0.1), OutOfRange);
}

TEST_CASE("mixing angle examples") {
  const MixingAngle flat = mixing_angle(1.0, 0.0);
  CHECK(flat.theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(flat.splitting == doctest::Approx(1.0));

  const MixingAngle diag = mixing_angle(1.0, 1.0);
  CHECK(diag.theta == doctest::Approx(std::numbers::pi / 4));
  CHECK(diag.splitting == doctest::Approx(std::sqrt(2.0)));

  const MixingAngle neg = mixing_angle(1.0, -1.0);
  CHECK(neg.theta == doctest::Approx(3 * std::numbers::pi / 4));

  CHECK_THROWS_AS(mixing_angle(0.0, 1.0), InvalidArgument);
}

TEST_CASE("energy basis diagonalizes H_S with eigenvalues 0 and Omega") {
  for (double oz : {-3.0, 0.0, 0.5, 99.995}) {
    const EnergyBasis b = energy_basis(1.0, oz);
    const Matrix2c h = system_hamiltonian(1.0, oz);
    CHECK((h * b.ground).norm() < 1e-12);
    CHECK((h * b.excited - b.splitting * b.excited).norm() < 1e-12);
    CHECK(std::abs(b.ground.dot(b.excited)) < 1e-14);
    CHECK(b.energy(1) == doctest::Approx(std::hypot(1.0, oz)));
    const Matrix2c r = b.rotation();
    CHECK((r.adjoint() * r - Matrix2c::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("system Hamiltonian matches its Pauli expansion") {
  const Matrix2c h = system_hamiltonian(1.5, 2.0);
  const double omega = 2.5;
  const Matrix2c expected = 0.5 * (omega * pauli::identity() + 1.5 * pauli::x() + 2.0 * pauli::z());
  CHECK(testing::max_abs_diff(h, expected) < 1e-14);
}

TEST_CASE("counterdiabatic field sign and size") {
  // increasing Omega_z decreases theta, so Omega_y must be negative mid-ramp
  const RampSpec up{1.0, 3.0, 1.0};
  const double t = 0.5;
  const double oz = ramp_value(up, t);
  const double expected = -1.0 * ramp_rate(up, t) / (1.0 + oz * oz);
  CHECK(sta_field(1.0, up, t) == doctest::Approx(expected));
  CHECK(sta_field(1.0, up, t) < 0.0);
  CHECK(sta_field(1.0, up, 0.0) == doctest::Approx(0.0));
  CHECK(sta_field(1.0, up, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("counterdiabatic field is odd under time reversal of the ramp") {
  const RampSpec fwd{2.0, 7.0, 1.3};
  const RampSpec rev{7.0, 2.0, 1.3};
  for (int i = 0; i <= 20; ++i) {
    const double t = 1.3 * i / 20.0;
    CHECK(sta_field(1.0, rev, 1.3 - t) == doctest::Approx(-sta_field(1.0, fwd, t)).epsilon(1e-12));
  }
}

TEST_CASE("integrated counterdiabatic field equals the change of mixing angle") {
  const RampSpec r{0.5, 6.0, 2.0};
  const int n = 2000;  // Simpson
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * sta_field(1.0, r, r.duration * i / n);
  }
  sum *= r.duration / n / 3.0;
  const double dtheta = mixing_angle(1.0, 6.0).theta - mixing_angle(1.0, 0.5).theta;
  CHECK(sum == doctest::Approx(dtheta).epsilon(1e-9));
}

TEST_CASE("control field: constant and ramped") {
  const ControlField c = ControlField::constant(1.0, 4.0);
  CHECK(c.omega_z(0.7) == 4.0);
  CHECK(c.omega_z_rate(0.7) == 0.0);
  CHECK(c.omega_y(0.7) == 0.0);

  const RampSpec r{1.0, 2.0, 1.0};
  const ControlField bare = ControlField::ramped(1.0, r, false);
  const ControlField sta = ControlField::ramped(1.0, r, true);
  CHECK(bare.omega_y(0.5) == 0.0);
  CHECK(sta.omega_y(0.5) == doctest::Approx(sta_field(1.0, r, 0.5)));
  const Matrix2c diff = sta.driving_hamiltonian(0.5) - sta.system_hamiltonian(0.5);
  CHECK(testing::max_abs_diff(diff, 0.5 * sta.omega_y(0.5) * pauli::y()) < 1e-14);
  CHECK(testing::max_abs_diff(bare.driving_hamiltonian(0.5), bare.system_hamiltonian(0.5)) == 0.0);
}

}  // TEST_SUITE
