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

#include "ottoforge/engine.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ottoforge/controls.hpp"
#include "ottoforge/errors.hpp"
#include "ottoforge/parallel.hpp"

namespace ottoforge {

void CycleConfig::validate() const {
  if (!(omega_x > 0.0)) {
    throw InvalidArgument("omega_x must be positive");
  }
  if (!(omega_z_cold >= 0.0) || !(omega_z_hot >= omega_z_cold)) {
    throw InvalidArgument("need omega_z_hot >= omega_z_cold >= 0");
  }
  if (!(tau_cycle >= 0.0) || !std::isfinite(tau_cycle)) {
    throw InvalidArgument("cycle time must be finite and non-negative");
  }
  if (!(beta_h > 0.0) || !(beta_c >= beta_h)) {
    throw InvalidArgument("need beta_c >= beta_h > 0 (cold bath no hotter than hot bath)");
  }
  if (!(alpha >= 0.0)) {
    throw InvalidArgument("bath coupling alpha must be non-negative");
  }
  if (omega_cutoff && !(*omega_cutoff > 0.0)) {
    throw InvalidArgument("cutoff frequency must be positive");
  }
  if (substeps < 1) {
    throw InvalidArgument("substeps must be at least 1");
  }
  noise.validate();
}

double CycleConfig::omega_cold() const { return std::hypot(omega_x, omega_z_cold); }

double CycleConfig::omega_hot() const { return std::hypot(omega_x, omega_z_hot); }

double CycleConfig::cutoff() const {
  if (omega_cutoff) return *omega_cutoff;
  // the hot splitting sets the scale when the ramp ends at omega_z_hot = 0
  return 100.0 * std::max(omega_z_hot, omega_x);
}

BathParams CycleConfig::bath(double beta) const { return {alpha, beta, cutoff()}; }

StrokeConfig CycleConfig::stroke(StrokeKind kind) const {
  const double ts = stroke_time();
  switch (kind) {
    case StrokeKind::compression:
      return StrokeConfig::isentrope(kind, omega_x, omega_z_cold, omega_z_hot, ts, noise,
                                     enhancement);
    case StrokeKind::hot_isochore:
      return StrokeConfig::isochore(kind, omega_x, omega_z_hot, ts, bath(beta_h), noise);
    case StrokeKind::expansion:
      return StrokeConfig::isentrope(kind, omega_x, omega_z_hot, omega_z_cold, ts, noise,
                                     enhancement);
    case StrokeKind::cold_isochore:
      return StrokeConfig::isochore(kind, omega_x, omega_z_cold, ts, bath(beta_c), noise);
  }
  throw InvalidArgument("unknown stroke kind");
}

CyclePropagators build_cycle(const CycleConfig& config) {
  config.validate();
  CyclePropagators out;
  Superoperator cycle = Superoperator::Identity();
  for (StrokeKind kind : {StrokeKind::compression, StrokeKind::hot_isochore,
                          StrokeKind::expansion, StrokeKind::cold_isochore}) {
    auto& slot = out.strokes[static_cast<int>(kind)];
    slot = stroke_propagator(config.stroke(kind), config.substeps);
    cycle = slot.propagator * cycle;
  }
  out.cycle = cycle;
  return out;
}

Superoperator cycle_propagator(const CycleConfig& config) { return build_cycle(config).cycle; }

LimitCycle find_limit_cycle(const Superoperator& cycle) {
  Eigen::ComplexEigenSolver<Matrix4c> solver(cycle);
  if (solver.info() != Eigen::Success) {
    throw NoLimitCycleError("eigendecomposition of the cycle propagator failed");
  }
  const auto& values = solver.eigenvalues();
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(values(i) - 1.0) < std::abs(values(best) - 1.0)) best = i;
  }
  if (std::abs(values(best) - 1.0) > kUnitEigenvalueTol) {
    std::ostringstream why;
    why << "no eigenvalue near 1 (closest " << values(best) << ")";
    throw NoLimitCycleError(why.str());
  }
  double second = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (i != best) second = std::max(second, std::abs(values(i)));
  }
  if (second >= 1.0 - kUniquenessGap) {
    std::ostringstream why;
    why << "unit eigenvalue is degenerate (second modulus " << second << ")";
    throw NonUniqueLimitCycleError(why.str());
  }

  Matrix2c rho = devectorize(solver.eigenvectors().col(best));
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const double trace = rho.trace().real();
  if (std::abs(trace) < 1e-12) {
    throw NoLimitCycleError("fixed-point eigenvector is traceless");
  }
  rho /= trace;

  LimitCycle out{DensityMatrix(rho), values(best), second, 0.0};
  out.fixed_point_residual = trace_distance(apply_map(cycle, rho), rho);
  if (out.fixed_point_residual > kFixedPointTol) {
    std::ostringstream why;
    why << "fixed point does not verify (residual " << out.fixed_point_residual << ")";
    throw NoLimitCycleError(why.str());
  }
  return out;
}

DensityMatrix limit_cycle_state(const CycleConfig& config) {
  return find_limit_cycle(cycle_propagator(config)).state;
}

DensityMatrix gibbs_state(double omega_x, double omega_z, double beta) {
  const EnergyBasis basis = energy_basis(omega_x, omega_z);
  // ground energy 0, excited energy Omega
  const double excited = 1.0 / (1.0 + std::exp(beta * basis.splitting));
  const Matrix2c rho = (1.0 - excited) * basis.ground * basis.ground.adjoint() +
                       excited * basis.excited * basis.excited.adjoint();
  return DensityMatrix::sanitized(rho);
}

namespace {

// One power-iteration step. The trace is renormalized since the leading
// eigenvalue is 1 only to roundoff, and the drift compounds over long transients.
Matrix2c cycle_step(const Superoperator& cycle, const Matrix2c& rho) {
  Matrix2c next = apply_map(cycle, rho);
  next = (0.5 * (next + next.adjoint())).eval();
  return next / next.trace().real();
}

}  // namespace

Matrix2c power_iterate(const Superoperator& cycle, const DensityMatrix& start, int cycles) {
  Matrix2c rho = start.matrix();
  for (int n = 0; n < cycles; ++n) rho = cycle_step(cycle, rho);
  return rho;
}

std::optional<int> cycles_to_converge(const Superoperator& cycle, const DensityMatrix& start,
                                      const DensityMatrix& target, double tol, int max_cycles) {
  Matrix2c rho = start.matrix();
  for (int n = 0; n <= max_cycles; ++n) {
    if (trace_distance(rho, target.matrix()) <= tol) return n;
    rho = cycle_step(cycle, rho);
  }
  return std::nullopt;
}

namespace {

double energy(const Matrix2c& hamiltonian, const Matrix2c& rho) {
  return (hamiltonian * rho).trace().real();
}

CyclePerformance compute_performance(const CycleConfig& config, const CyclePropagators& props,
                                     const LimitCycle& limit) {
  const Matrix2c h_cold = system_hamiltonian(config.omega_x, config.omega_z_cold);
  const Matrix2c h_hot = system_hamiltonian(config.omega_x, config.omega_z_hot);

  CyclePerformance perf;
  perf.vertex_states[0] = limit.state.matrix();
  perf.vertex_states[1] = apply_map(props.stroke(StrokeKind::compression), perf.vertex_states[0]);
  perf.vertex_states[2] = apply_map(props.stroke(StrokeKind::hot_isochore), perf.vertex_states[1]);
  perf.vertex_states[3] = apply_map(props.stroke(StrokeKind::expansion), perf.vertex_states[2]);
  const Matrix2c closed = apply_map(props.stroke(StrokeKind::cold_isochore), perf.vertex_states[3]);

  perf.vertex_energies = {energy(h_cold, perf.vertex_states[0]),
                          energy(h_hot, perf.vertex_states[1]),
                          energy(h_hot, perf.vertex_states[2]),
                          energy(h_cold, perf.vertex_states[3])};
  const auto& e = perf.vertex_energies;
  perf.w01 = e[1] - e[0];
  perf.q_h = e[2] - e[1];
  perf.w23 = e[3] - e[2];
  perf.q_c = energy(h_cold, closed) - e[3];
  perf.balance_residual = std::abs(perf.w01 + perf.q_h + perf.w23 + perf.q_c);

  const double tau = config.tau_cycle;
  const double extracted = -(perf.w01 + perf.w23);
  perf.power = tau > 0.0 ? extracted / tau : 0.0;
  const double zero = 1e-12 * std::max(config.omega_hot(), config.omega_x);
  if (perf.q_h > zero && extracted > zero) {
    perf.efficiency = extracted / perf.q_h;
  }
  perf.entropy_rate =
      tau > 0.0 ? (-config.beta_h * perf.q_h - config.beta_c * perf.q_c) / tau : 0.0;
  perf.energy_scale = std::max(config.omega_hot(), config.omega_x);
  return perf;
}

}  // namespace

CycleSolution solve_cycle(const CycleConfig& config) {
  CyclePropagators props = build_cycle(config);
  LimitCycle limit = find_limit_cycle(props.cycle);
  CyclePerformance perf = compute_performance(config, props, limit);
  return {config, std::move(props), std::move(limit), std::move(perf)};
}

CyclePerformance energetics(const CycleConfig& config) { return solve_cycle(config).performance; }

ClosedFormBenchmarks closed_form_benchmarks(const CycleConfig& config) {
  config.validate();
  const double oc = config.omega_cold();
  const double oh = config.omega_hot();
  const double bracket =
      std::tanh(0.5 * config.beta_c * oc) - std::tanh(0.5 * config.beta_h * oh);
  return {0.5 * (oh - oc) * bracket, 0.5 * oh * bracket, 1.0 - oc / oh,
          1.0 - config.beta_h / config.beta_c};
}

std::vector<SweepRow> sweep(std::span<const CycleConfig> configs, int threads) {
  std::vector<SweepRow> rows(configs.size());
  parallel_for(configs.size(), threads, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.config = configs[i];
    try {
      row.performance = solve_cycle(configs[i]).performance;
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
  });
  return rows;
}

}  // namespace ottoforge
