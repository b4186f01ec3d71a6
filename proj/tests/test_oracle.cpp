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

#include "ottoforge/errors.hpp"
#include "ottoforge/oracle.hpp"
#include "support.hpp"

using namespace ottoforge;

namespace {

StrokeConfig noisy_compression(double lambda, Enhancement mode = Enhancement::STA) {
  return StrokeConfig::isentrope(StrokeKind::compression, 1.0, 2.0, 4.0, 0.5,
                                 NoiseSpec::shared(lambda), mode);
}

DensityMatrix plus_state() { return DensityMatrix::pure(Vector2c(1.0, 1.0)); }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("trajectory seeds are distinct and reproducible") {
  CHECK(trajectory_seed(1, 0) == trajectory_seed(1, 0));
  CHECK(trajectory_seed(1, 0) != trajectory_seed(1, 1));
  CHECK(trajectory_seed(1, 0) != trajectory_seed(2, 0));
}

TEST_CASE("step count must divide the stroke") {
  const StrokeConfig s = noisy_compression(1e-3);
  CHECK(oracle_steps(s, 0.5 / 64) == 64);
  CHECK_THROWS_AS(oracle_steps(s, 0.3), InvalidArgument);
  CHECK_THROWS_AS(oracle_steps(s, 0.0), InvalidArgument);
}

TEST_CASE("coarse steps warn, then refuse") {
  const StrokeConfig s = noisy_compression(0.5);
  CHECK(dt_criterion(s, 0.5 / 4096).value < kDtWarn);
  CHECK_FALSE(dt_criterion(s, 0.5 / 4096).warn);
  CHECK(dt_criterion(s, 0.5 / 4).warn);
  CHECK_THROWS_AS(dt_criterion(s, 0.5), StepSizeError);
  CHECK_THROWS_AS(noise_average(s, plus_state(), 100, 0.5, 1), StepSizeError);
}

TEST_CASE("strokes coupled to a bath are refused") {
  const StrokeConfig iso = StrokeConfig::isochore(StrokeKind::hot_isochore, 1.0, 2.0, 1.0,
                                                  BathParams{0.01, 1.0, 1e4},
                                                  NoiseSpec::shared(1e-3));
  CHECK_THROWS_AS(sample_trajectory(iso, plus_state(), 1.0 / 64, 1), InvalidArgument);
}

TEST_CASE("too few trajectories are refused") {
  CHECK_THROWS_AS(noise_average(noisy_compression(1e-3), plus_state(), 99, 0.5 / 64, 1),
                  InvalidArgument);
}

TEST_CASE("single trajectories stay pure") {
  const StrokeConfig s = noisy_compression(0.02, Enhancement::NA);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix2c out = sample_trajectory(s, plus_state(), 0.5 / 256, seed);
    CHECK(std::real(out.trace()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::real((out * out).trace()) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("without noise every trajectory reproduces the master equation") {
  const StrokeConfig s = noisy_compression(0.0);
  const TrajectoryRun r = noise_average(s, plus_state(), 100, 0.5 / 512, 3);
  CHECK(r.std_error < 1e-12);
  CHECK(r.comparison < 1e-5);  // midpoint error of both integrators only
}

TEST_CASE("runs are deterministic and thread-independent") {
  const StrokeConfig s = noisy_compression(0.01, Enhancement::NA);
  const TrajectoryRun a = noise_average(s, plus_state(), 200, 0.5 / 128, 42, 1);
  const TrajectoryRun b = noise_average(s, plus_state(), 200, 0.5 / 128, 42, 4);
  const TrajectoryRun c = noise_average(s, plus_state(), 200, 0.5 / 128, 43, 1);
  CHECK(testing::max_abs_diff(a.mean_state, b.mean_state) == 0.0);
  CHECK(testing::max_abs_diff(a.mean_state, c.mean_state) > 0.0);
}

TEST_CASE("standard error falls as one over root n") {
  const StrokeConfig s = noisy_compression(0.02, Enhancement::NA);
  const TrajectoryRun small = noise_average(s, plus_state(), 400, 0.5 / 128, 7, 4);
  const TrajectoryRun large = noise_average(s, plus_state(), 1600, 0.5 / 128, 7, 4);
  CHECK(small.std_error / large.std_error == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("noise average matches the noisy master equation") {
  const StrokeConfig s = noisy_compression(0.02, Enhancement::STA);
  const OracleReport r = oracle_check(s, plus_state(), 2000, 0.5 / 256, 11, 4);
  CHECK(r.threshold == doctest::Approx(3.0 * r.run.std_error + r.allowance + 1e-12));
  CHECK(r.allowance == doctest::Approx(2.0 * r.refined_gap));
  CHECK(r.passed);
}

TEST_CASE("dephasing fit recovers lambda Omega_z^2") {
  const double lambda = 0.01;
  const double oz = 3.0;
  const StrokeConfig iso = StrokeConfig::isochore(StrokeKind::hot_isochore, 1.0, oz, 2.0,
                                                  BathParams{0.0, 1.0, 1e4},
                                                  NoiseSpec::shared(lambda));
  const TrajectoryRun r = noise_average(iso, plus_state(), 2000, 2.0 / 256, 5, 4);
  const DephasingFit f = fit_dephasing_rate(iso, plus_state(), r);
  CHECK(f.expected == doctest::Approx(lambda * oz * oz));
  CHECK(f.consistent);
  CHECK(std::abs(f.rate - f.expected) <= 3.0 * f.std_error);
}

}  // TEST_SUITE
