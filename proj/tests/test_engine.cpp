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
#include <vector>

#include "ottoforge/controls.hpp"
#include "ottoforge/errors.hpp"
#include "ottoforge/engine.hpp"
#include "support.hpp"

using namespace ottoforge;
using ottoforge::testing::degenerate_engine;
using ottoforge::testing::reference_engine;
using ottoforge::testing::scaled_engine;

TEST_SUITE("engine") {

TEST_CASE("config validation") {
  CycleConfig c = reference_engine(1.0);
  CHECK_NOTHROW(c.validate());
  c.tau_cycle = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = reference_engine(1.0);
  c.omega_z_hot = c.omega_z_cold - 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = reference_engine(1.0);
  c.beta_c = c.beta_h / 2;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = reference_engine(1.0);
  c.omega_x = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("derived quantities") {
  const CycleConfig c = reference_engine(8.0);
  CHECK(c.stroke_time() == 2.0);
  CHECK(c.omega_cold() == doctest::Approx(100.0));
  CHECK(c.omega_hot() == doctest::Approx(200.0));
  CHECK(c.cutoff() == doctest::Approx(100.0 * c.omega_z_hot));
  const StrokeConfig hot = c.stroke(StrokeKind::hot_isochore);
  REQUIRE(hot.bath.has_value());
  CHECK(hot.bath->beta == c.beta_h);
  CHECK(hot.omega_z == c.omega_z_hot);
  const StrokeConfig exp = c.stroke(StrokeKind::expansion);
  CHECK(exp.omega_z_start() == c.omega_z_hot);
  CHECK(exp.omega_z_end() == c.omega_z_cold);
  CHECK(exp.duration == 2.0);
}

TEST_CASE("closed-form benchmarks of the reference engine") {
  const ClosedFormBenchmarks b = closed_form_benchmarks(reference_engine(1.0));
  const double bracket = std::tanh(5.0) - std::tanh(2.0);
  CHECK(b.w_max == doctest::Approx(50.0 * bracket));
  CHECK(b.w_max == doctest::Approx(1.794).epsilon(1e-3));
  CHECK(b.q_h_max == doctest::Approx(100.0 * bracket));
  CHECK(b.eta_otto == doctest::Approx(0.5));
  CHECK(b.eta_carnot == doctest::Approx(0.8));
}

TEST_CASE("tau = 0 gives the identity cycle, which has no unique limit cycle") {
  const Superoperator v = cycle_propagator(scaled_engine(0.0));
  CHECK(max_abs(v - Superoperator::Identity()) == 0.0);
  CHECK_THROWS_AS(find_limit_cycle(v), NonUniqueLimitCycleError);
}

TEST_CASE("a propagator with no unit eigenvalue is rejected") {
  CHECK_THROWS_AS(find_limit_cycle(0.5 * Superoperator::Identity()), NoLimitCycleError);
}

TEST_CASE("degenerate cycle relaxes to Gibbs and exchanges nothing") {
  const CycleConfig c = degenerate_engine();
  const CycleSolution s = solve_cycle(c);
  const DensityMatrix g = gibbs_state(c.omega_x, c.omega_z_cold, c.beta_c);
  CHECK(trace_distance(s.limit.state.matrix(), g.matrix()) < 1e-10);
  const CyclePerformance& p = s.performance;
  const double scale = p.energy_scale;
  CHECK(std::abs(p.w01) < 1e-12 * scale);
  CHECK(std::abs(p.q_h) < 1e-12 * scale);
  CHECK(std::abs(p.w23) < 1e-12 * scale);
  CHECK(std::abs(p.q_c) < 1e-12 * scale);
  CHECK_FALSE(p.efficiency.has_value());
}

TEST_CASE("Gibbs state populations") {
  const DensityMatrix g = gibbs_state(1.0, 0.0, std::log(3.0));
  const EnergyBasis b = energy_basis(1.0, 0.0);
  CHECK(std::real(b.excited.dot(g.matrix() * b.excited)) == doctest::Approx(0.25));
  CHECK(std::real(b.ground.dot(g.matrix() * b.ground)) == doctest::Approx(0.75));
}

TEST_CASE("limit cycle is a verified unique fixed point") {
  for (double tau : {0.2, 2.0, 20.0}) {
    for (auto mode : {Enhancement::NA, Enhancement::STA}) {
      const CycleSolution s = solve_cycle(scaled_engine(tau, mode, 1e-3));
      CHECK(std::abs(s.limit.unit_eigenvalue - 1.0) < kUnitEigenvalueTol);
      CHECK(s.limit.fixed_point_residual <= kFixedPointTol);
      CHECK(s.limit.second_eigenvalue_modulus < 1.0 - kUniquenessGap);
      CHECK(s.performance.balance_residual < 1e-10 * s.performance.energy_scale);
    }
  }
}

TEST_CASE("power iteration reaches the limit cycle from thermal and collapsed states") {
  const CycleConfig c = reference_engine(10.0, Enhancement::NA, 1e-3);
  const CycleSolution s = solve_cycle(c);
  const DensityMatrix thermal = gibbs_state(c.omega_x, c.omega_z_cold, c.beta_c);
  const EnergyBasis b = energy_basis(c.omega_x, c.omega_z_cold);
  const DensityMatrix excited = DensityMatrix::pure(b.excited);
  for (const DensityMatrix& start : {thermal, excited}) {
    const std::optional<int> n = cycles_to_converge(s.propagators.cycle, start, s.limit.state);
    REQUIRE(n.has_value());
    CHECK(*n <= 200);
  }
}

TEST_CASE("power iteration keeps unit trace over long transients") {
  const CycleConfig c = scaled_engine(0.06, Enhancement::NA);
  const CycleSolution s = solve_cycle(c);
  const DensityMatrix excited = DensityMatrix::pure(energy_basis(c.omega_x, c.omega_z_cold).excited);
  const Matrix2c rho = power_iterate(s.propagators.cycle, excited, 200000);
  CHECK(std::real(rho.trace()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(rho, s.limit.state.matrix()) < 1e-9);
}

TEST_CASE("vertex states chain through the stroke propagators") {
  const CycleSolution s = solve_cycle(scaled_engine(1.0, Enhancement::NA, 1e-3));
  const auto& v = s.performance.vertex_states;
  CHECK(testing::max_abs_diff(v[0], s.limit.state.matrix()) < 1e-14);
  CHECK(testing::max_abs_diff(
            v[1], apply_map(s.propagators.stroke(StrokeKind::compression), v[0])) < 1e-12);
  CHECK(testing::max_abs_diff(
            v[3], apply_map(s.propagators.stroke(StrokeKind::expansion), v[2])) < 1e-12);
}

TEST_CASE("slow noiseless engine saturates the closed-form work and Otto efficiency") {
  for (auto mode : {Enhancement::NA, Enhancement::STA}) {
    const CycleConfig c = reference_engine(10.0, mode);
    const CyclePerformance p = energetics(c);
    const ClosedFormBenchmarks b = closed_form_benchmarks(c);
    CHECK(p.power * c.tau_cycle == doctest::Approx(b.w_max).epsilon(5e-3));
    REQUIRE(p.efficiency.has_value());
    CHECK(*p.efficiency == doctest::Approx(b.eta_otto).epsilon(5e-3));
  }
}

TEST_CASE("noiseless counterdiabatic engine runs at Otto efficiency at any speed") {
  for (double tau : {0.05, 0.5, 5.0}) {
    const CycleConfig c = scaled_engine(tau, Enhancement::STA);
    const CyclePerformance p = energetics(c);
    if (p.efficiency) {
      CHECK(*p.efficiency == doctest::Approx(closed_form_benchmarks(c).eta_otto).epsilon(1e-6));
    }
  }
}

TEST_CASE("energy bookkeeping signs and second law") {
  const CycleConfig c = scaled_engine(5.0, Enhancement::NA, 1e-4);
  const CyclePerformance p = energetics(c);
  CHECK(p.q_h > 0.0);
  CHECK(p.q_c < 0.0);
  CHECK(p.power == doctest::Approx(-(p.w01 + p.w23) / c.tau_cycle));
  CHECK(p.entropy_rate >= 0.0);
  CHECK(p.entropy_rate ==
        doctest::Approx((-c.beta_h * p.q_h - c.beta_c * p.q_c) / c.tau_cycle));
}

TEST_CASE("sweep keeps order and records failures per row") {
  std::vector<CycleConfig> configs{scaled_engine(1.0), scaled_engine(0.0), scaled_engine(3.0)};
  const std::vector<SweepRow> rows = sweep(configs, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ok());
  CHECK_FALSE(rows[1].ok());
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].ok());
  CHECK(rows[2].config.tau_cycle == 3.0);
  const CyclePerformance direct = energetics(configs[2]);
  CHECK(rows[2].performance->power == direct.power);
}

TEST_CASE("sweep is independent of the thread count") {
  std::vector<CycleConfig> configs;
  for (double tau : testing::log_grid(0.1, 10.0, 8)) configs.push_back(scaled_engine(tau));
  const auto a = sweep(configs, 1);
  const auto b = sweep(configs, 4);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].performance->power == b[i].performance->power);
}

}  // TEST_SUITE
