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

#include "ottoforge/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "ottoforge/errors.hpp"
#include "ottoforge/parallel.hpp"

namespace ottoforge {

namespace {

enum class Axis { z, y, x, ql };

struct NoiseChannel {
  Axis axis;
  double lambda;
};

std::vector<NoiseChannel> channels(const StrokeConfig& stroke) {
  std::vector<NoiseChannel> out;
  const NoiseSpec& n = stroke.noise;
  if (n.lambda_z > 0.0) out.push_back({Axis::z, n.lambda_z});
  if (n.lambda_y > 0.0 && stroke.counterdiabatic()) out.push_back({Axis::y, n.lambda_y});
  if (n.lambda_x > 0.0) out.push_back({Axis::x, n.lambda_x});
  if (stroke.lubricated()) out.push_back({Axis::ql, n.ql_strength});
  return out;
}

// K as a Bloch vector: K = k . sigma.
Eigen::Vector3d coupling(const ControlField& field, Axis axis, double t) {
  switch (axis) {
    case Axis::z:
      return {0.0, 0.0, 0.5 * field.omega_z(t)};
    case Axis::y:
      return {0.0, 0.5 * field.omega_y(t), 0.0};
    case Axis::x:
      return {0.5 * field.omega_x(), 0.0, 0.0};
    case Axis::ql: {
      const double theta = mixing_angle(field.omega_x(), field.omega_z(t)).theta;
      return {std::sin(theta), 0.0, std::cos(theta)};
    }
  }
  return Eigen::Vector3d::Zero();
}

Eigen::Vector3d bloch_part(const Matrix2c& h) {
  return {h(0, 1).real(), -h(0, 1).imag(), 0.5 * (h(0, 0) - h(1, 1)).real()};
}

// exp(-i h.sigma dt) up to a global phase.
Matrix2c step_unitary(const Eigen::Vector3d& h, double dt) {
  const double norm = h.norm();
  const double angle = norm * dt;
  Matrix2c u = std::cos(angle) * pauli::identity();
  if (norm > 0.0) {
    const Complex c(0.0, -std::sin(angle) / norm);
    u += c * (h.x() * pauli::x() + h.y() * pauli::y() + h.z() * pauli::z());
  }
  return u;
}

void check_oracle_stroke(const StrokeConfig& stroke) {
  stroke.validate();
  if (stroke.bath && stroke.bath->alpha > 0.0) {
    throw InvalidArgument("trajectory oracle covers bathless strokes only (set alpha = 0)");
  }
}

struct Paths {
  Matrix2c coarse;
  Matrix2c fine;
};

// Coarse steps use xi = s Z; the two fine half-steps use s (Z + W) and
// s (Z - W), whose mean is the coarse increment. s = sqrt(2 lambda / dt).
Paths integrate(const StrokeConfig& stroke, const Matrix2c& initial, int steps,
                std::uint64_t seed, bool with_fine) {
  const ControlField field = stroke.field();
  const auto noise = channels(stroke);
  const double dt = stroke.duration / steps;
  std::mt19937_64 main_rng(seed);
  std::mt19937_64 aux_rng(trajectory_seed(seed, 0x5deece66dULL));
  std::normal_distribution<double> main_normal(0.0, 1.0);
  std::normal_distribution<double> aux_normal(0.0, 1.0);

  std::vector<double> z(noise.size()), w(noise.size()), scale(noise.size());
  for (std::size_t a = 0; a < noise.size(); ++a) scale[a] = std::sqrt(2.0 * noise[a].lambda / dt);

  auto hamiltonian = [&](double t, auto&& xi) {
    Eigen::Vector3d h = bloch_part(field.driving_hamiltonian(t));
    for (std::size_t a = 0; a < noise.size(); ++a) h += xi(a) * coupling(field, noise[a].axis, t);
    return h;
  };

  Paths out{initial, initial};
  for (int k = 0; k < steps; ++k) {
    const double t0 = k * dt;
    for (std::size_t a = 0; a < noise.size(); ++a) z[a] = main_normal(main_rng);
    const Matrix2c u = step_unitary(
        hamiltonian(t0 + 0.5 * dt, [&](std::size_t a) { return scale[a] * z[a]; }), dt);
    out.coarse = u * out.coarse * u.adjoint();
    if (with_fine) {
      for (std::size_t a = 0; a < noise.size(); ++a) w[a] = aux_normal(aux_rng);
      const Matrix2c u1 = step_unitary(
          hamiltonian(t0 + 0.25 * dt, [&](std::size_t a) { return scale[a] * (z[a] + w[a]); }),
          0.5 * dt);
      const Matrix2c u2 = step_unitary(
          hamiltonian(t0 + 0.75 * dt, [&](std::size_t a) { return scale[a] * (z[a] - w[a]); }),
          0.5 * dt);
      const Matrix2c u12 = u2 * u1;
      out.fine = u12 * out.fine * u12.adjoint();
    }
  }
  return out;
}

std::array<double, 3> coordinates(const Matrix2c& rho) {
  return {rho(0, 0).real(), rho(0, 1).real(), rho(0, 1).imag()};
}

struct Summary {
  Matrix2c mean = Matrix2c::Zero();
  std::array<double, 3> std_error{};
};

Summary summarize(const std::vector<Matrix2c>& samples) {
  Summary s;
  const double n = static_cast<double>(samples.size());
  for (const auto& m : samples) s.mean += m;
  s.mean /= n;
  const auto mean = coordinates(s.mean);
  std::array<double, 3> ss{};
  for (const auto& m : samples) {
    const auto c = coordinates(m);
    for (int i = 0; i < 3; ++i) ss[i] += (c[i] - mean[i]) * (c[i] - mean[i]);
  }
  for (int i = 0; i < 3; ++i) s.std_error[i] = std::sqrt(ss[i] / (n - 1.0) / n);
  return s;
}

double rss(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Matrix2c master_solution(const StrokeConfig& stroke, const DensityMatrix& initial, int steps) {
  const int substeps = std::max(kDefaultSubsteps, steps);
  return apply_map(stroke_propagator(stroke, substeps).propagator, initial.matrix());
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t k) {
  std::uint64_t x = master + (k + 1) * 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int oracle_steps(const StrokeConfig& stroke, double dt) {
  if (!(dt > 0.0) || !(stroke.duration > 0.0)) {
    throw InvalidArgument("oracle needs dt > 0 and a stroke of positive duration");
  }
  const double ratio = stroke.duration / dt;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * ratio) {
    std::ostringstream why;
    why << "dt = " << dt << " does not divide the stroke duration " << stroke.duration;
    throw InvalidArgument(why.str());
  }
  return static_cast<int>(steps);
}

DtCriterion dt_criterion(const StrokeConfig& stroke, double dt) {
  const int steps = oracle_steps(stroke, dt);
  const ControlField field = stroke.field();
  const auto noise = channels(stroke);
  DtCriterion out;
  for (int k = 0; k <= 2 * steps; ++k) {
    const double t = stroke.duration * k / (2.0 * steps);
    double sum = 0.0;
    for (const auto& ch : noise) {
      sum += 4.0 * ch.lambda * coupling(field, ch.axis, t).squaredNorm() * dt;
    }
    out.value = std::max(out.value, sum);
  }
  out.warn = out.value > kDtWarn;
  if (out.value > kDtFail) {
    std::ostringstream why;
    why << "dt = " << dt << " too coarse: lambda Omega^2 dt reaches " << out.value
        << " (limit " << kDtFail << ")";
    throw StepSizeError(why.str());
  }
  return out;
}

Matrix2c sample_trajectory(const StrokeConfig& stroke, const DensityMatrix& initial, double dt,
                           std::uint64_t seed) {
  check_oracle_stroke(stroke);
  dt_criterion(stroke, dt);
  return integrate(stroke, initial.matrix(), oracle_steps(stroke, dt), seed, false).coarse;
}

namespace {

struct CoupledRuns {
  TrajectoryRun run;
  Matrix2c fine_mean;
};

CoupledRuns run_trajectories(const StrokeConfig& stroke, const DensityMatrix& initial, int n,
                             double dt, std::uint64_t seed, int threads, bool with_fine) {
  check_oracle_stroke(stroke);
  if (n < 100) {
    throw InvalidArgument("noise averaging needs at least 100 trajectories");
  }
  const DtCriterion criterion = dt_criterion(stroke, dt);
  const int steps = oracle_steps(stroke, dt);

  std::vector<Matrix2c> coarse(n), fine(with_fine ? n : 0);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t k) {
    const Paths p = integrate(stroke, initial.matrix(), steps, trajectory_seed(seed, k), with_fine);
    coarse[k] = p.coarse;
    if (with_fine) fine[k] = p.fine;
  });

  const Summary s = summarize(coarse);
  CoupledRuns out;
  TrajectoryRun& run = out.run;
  run.n_trajectories = n;
  run.dt = dt;
  run.seed = seed;
  run.mean_state = s.mean;
  run.entry_std_error = s.std_error;
  run.std_error = rss(s.std_error);
  run.master_state = master_solution(stroke, initial, steps);
  run.comparison = trace_distance(run.mean_state, run.master_state);
  run.criterion = criterion;
  out.fine_mean = with_fine ? summarize(fine).mean : s.mean;
  return out;
}

}  // namespace

TrajectoryRun noise_average(const StrokeConfig& stroke, const DensityMatrix& initial, int n,
                            double dt, std::uint64_t seed, int threads) {
  return run_trajectories(stroke, initial, n, dt, seed, threads, false).run;
}

OracleReport oracle_check(const StrokeConfig& stroke, const DensityMatrix& initial, int n,
                          double dt, std::uint64_t seed, int threads) {
  CoupledRuns runs = run_trajectories(stroke, initial, n, dt, seed, threads, true);
  OracleReport out;
  out.run = runs.run;
  out.refined_gap = trace_distance(runs.run.mean_state, runs.fine_mean);
  out.allowance = 2.0 * out.refined_gap;
  out.threshold = 3.0 * out.run.std_error + out.allowance;
  // the 1e-12 floor lets noiseless runs pass on roundoff alone
  out.passed = out.run.comparison <= out.threshold + 1e-12;
  return out;
}

DephasingFit fit_dephasing_rate(const StrokeConfig& isochore, const DensityMatrix& initial,
                                const TrajectoryRun& run) {
  check_oracle_stroke(isochore);
  if (is_isentrope(isochore.kind) || isochore.noise.lambda_x > 0.0) {
    throw InvalidArgument("dephasing fit needs an isochore with z noise only");
  }
  const Superoperator hamiltonian =
      commutator_superop(system_hamiltonian(isochore.omega_x, isochore.omega_z));
  const Superoperator dephasing = double_commutator_superop(pauli::z(), 0.25);
  const double duration = isochore.duration;
  auto model = [&](double r) {
    return coordinates(apply_map(expm((hamiltonian + r * dephasing) * duration), initial.matrix()));
  };

  const auto observed = coordinates(run.mean_state);
  DephasingFit fit;
  fit.expected = isochore.noise.lambda_z * isochore.omega_z * isochore.omega_z;
  double r = fit.expected;
  double information = 0.0;
  for (int iter = 0; iter < 20; ++iter) {
    const double h = std::max(1e-8, 1e-5 * std::abs(r));
    const auto plus = model(r + h);
    const auto minus = model(r - h);
    const auto here = model(r);
    double num = 0.0;
    information = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double sigma = run.entry_std_error[i];
      if (!(sigma > 0.0)) continue;
      const double jac = (plus[i] - minus[i]) / (2.0 * h);
      num += jac * (observed[i] - here[i]) / (sigma * sigma);
      information += jac * jac / (sigma * sigma);
    }
    if (!(information > 0.0)) {
      throw InvalidArgument("trajectory run carries no information on the dephasing rate");
    }
    const double delta = num / information;
    r += delta;
    if (std::abs(delta) <= 1e-12 * std::max(1.0, std::abs(r))) break;
  }
  fit.rate = r;
  fit.std_error = 1.0 / std::sqrt(information);
  fit.consistent = std::abs(fit.rate - fit.expected) <= 3.0 * fit.std_error;
  return fit;
}

}  // namespace ottoforge
