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

#include "ottoforge/fpms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ottoforge/errors.hpp"

namespace ottoforge {

TransitionMatrix transition_matrix(const Superoperator& propagator, const EnergyBasis& from,
                                   const EnergyBasis& to) {
  TransitionMatrix out;
  for (int i = 0; i < 2; ++i) {
    const Vector2c ket_i = from.ket(i);
    const Matrix2c evolved = apply_map(propagator, ket_i * ket_i.adjoint());
    for (int j = 0; j < 2; ++j) {
      const Vector2c ket_j = to.ket(j);
      double p = (ket_j.adjoint() * evolved * ket_j)(0, 0).real();
      const double clipped = std::clamp(p, 0.0, 1.0);
      out.max_clip = std::max(out.max_clip, std::abs(p - clipped));
      out.p(j, i) = clipped;
    }
    const double column = out.p.col(i).sum();
    if (!(column > 0.0)) {
      throw IntegrationAccuracyError("transition matrix column vanished");
    }
    out.p.col(i) /= column;
  }
  if (out.max_clip > kTransitionClipTol) {
    std::ostringstream why;
    why << "transition probability clipped by " << out.max_clip << "; increase substeps";
    throw IntegrationAccuracyError(why.str());
  }
  return out;
}

TransitionMatrix transition_matrix(const StrokeConfig& stroke, int substeps) {
  const Superoperator v = stroke_propagator(stroke, substeps).propagator;
  return transition_matrix(v, energy_basis(stroke.omega_x, stroke.omega_z_start()),
                           energy_basis(stroke.omega_x, stroke.omega_z_end()));
}

double TrajectoryDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& t : entries) total += t.probability;
  return total;
}

std::string_view to_string(InitialPopulations source) {
  return source == InitialPopulations::monitored ? "monitored" : "unmonitored";
}

std::optional<InitialPopulations> parse_initial_populations(std::string_view text) {
  if (text == "unmonitored") return InitialPopulations::unmonitored;
  if (text == "monitored") return InitialPopulations::monitored;
  return std::nullopt;
}

namespace {

std::array<double, 2> stationary_populations(const Eigen::Matrix2d& chain) {
  // two-state chain: flow g->e balances flow e->g
  const double up = chain(1, 0);
  const double down = chain(0, 1);
  if (up + down < 1e-14) {
    throw NonUniqueLimitCycleError("measured chain has no unique stationary populations");
  }
  return {down / (up + down), up / (up + down)};
}

}  // namespace

TrajectoryDistribution joint_distribution(const CycleSolution& solution,
                                          InitialPopulations source) {
  const CycleConfig& c = solution.config;
  const EnergyBasis cold = energy_basis(c.omega_x, c.omega_z_cold);
  const EnergyBasis hot = energy_basis(c.omega_x, c.omega_z_hot);
  const auto& props = solution.propagators;

  TrajectoryDistribution out;
  out.omega_cold = cold.splitting;
  out.omega_hot = hot.splitting;
  out.strokes[0] = transition_matrix(props.stroke(StrokeKind::compression), cold, hot);
  out.strokes[1] = transition_matrix(props.stroke(StrokeKind::hot_isochore), hot, hot);
  out.strokes[2] = transition_matrix(props.stroke(StrokeKind::expansion), hot, cold);
  out.strokes[3] = transition_matrix(props.stroke(StrokeKind::cold_isochore), cold, cold);

  if (source == InitialPopulations::unmonitored) {
    const Matrix2c& rho = solution.limit.state.matrix();
    for (int n = 0; n < 2; ++n) {
      const Vector2c k = cold.ket(n);
      out.initial[n] = std::max(0.0, (k.adjoint() * rho * k)(0, 0).real());
    }
    const double total = out.initial[0] + out.initial[1];
    out.initial[0] /= total;
    out.initial[1] /= total;
  } else {
    const Eigen::Matrix2d chain =
        out.strokes[3].p * out.strokes[2].p * out.strokes[1].p * out.strokes[0].p;
    out.initial = stationary_populations(chain);
  }

  const auto& [t01, t12, t23, t30] = out.strokes;
  int k = 0;
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      for (int s = 0; s < 2; ++s) {
        for (int v = 0; v < 2; ++v) {
          Trajectory& t = out.entries[k++];
          t.levels = {n, m, s, v};
          t.probability = out.initial[n] * t01(m, n) * t12(s, m) * t23(v, s);
          t.w01 = hot.energy(m) - cold.energy(n);
          t.q_h = hot.energy(s) - hot.energy(m);
          t.w23 = cold.energy(v) - hot.energy(s);
        }
      }
    }
  }
  return out;
}

TrajectoryDistribution joint_distribution(const CycleConfig& config, InitialPopulations source) {
  return joint_distribution(solve_cycle(config), source);
}

std::string_view to_string(CurrentKind kind) {
  return kind == CurrentKind::power ? "power" : "heat_rate";
}

double CurrentDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& p : support) total += p.probability;
  return total;
}

CurrentDistribution current_distribution(const TrajectoryDistribution& joint, CurrentKind kind,
                                         double tau_cycle) {
  if (!(tau_cycle > 0.0)) {
    throw InvalidArgument("currents need a positive cycle time");
  }
  // Values are rebuilt from integer level differences so that trajectories
  // with the same energy combination produce bit-identical doubles.
  std::map<double, double> bins;
  for (const Trajectory& t : joint.entries) {
    const auto [n, m, s, v] = t.levels;
    double value = 0.0;
    if (kind == CurrentKind::power) {
      value = -(joint.omega_hot * (m - s) + joint.omega_cold * (v - n)) / tau_cycle;
    } else {
      value = joint.omega_hot * (s - m) / tau_cycle;
    }
    if (value == 0.0) value = 0.0;  // fold -0 into +0
    bins[value] += t.probability;
  }
  CurrentDistribution out;
  out.kind = kind;
  for (const auto& [value, p] : bins) {
    if (p >= kSupportFloor) out.support.push_back({value, p});
  }
  return out;
}

double moment(const CurrentDistribution& dist, int order) {
  if (order < 0) {
    throw InvalidArgument("moment order must be non-negative");
  }
  double total = 0.0;
  for (const auto& [value, p] : dist.support) total += p * std::pow(value, order);
  return total;
}

Fluctuations fano_and_variance(const CurrentDistribution& dist, double tau_cycle) {
  Fluctuations out;
  out.mean = moment(dist, 1);
  // centred sum; equals <X^2> - <X>^2 without the cancellation
  double var = 0.0;
  for (const auto& [value, p] : dist.support) var += p * (value - out.mean) * (value - out.mean);
  out.variance_rate = tau_cycle * var;
  if (out.mean != 0.0) {
    out.fano = out.variance_rate / (out.mean * out.mean);
  }
  return out;
}

MeasuredPerformance measured_performance(const CycleSolution& solution,
                                         InitialPopulations source) {
  const double tau = solution.config.tau_cycle;
  MeasuredPerformance out;
  out.joint = joint_distribution(solution, source);
  out.power_distribution = current_distribution(out.joint, CurrentKind::power, tau);
  out.heat_distribution = current_distribution(out.joint, CurrentKind::heat_rate, tau);
  out.power = fano_and_variance(out.power_distribution, tau);
  out.heat_rate = fano_and_variance(out.heat_distribution, tau);
  out.mean_q_h = out.heat_rate.mean * tau;
  return out;
}

MeasuredPerformance measured_performance(const CycleConfig& config, InitialPopulations source) {
  return measured_performance(solve_cycle(config), source);
}

}  // namespace ottoforge
