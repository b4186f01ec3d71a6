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

// Four-point measurement statistics. The qubit is projectively measured in the
// instantaneous energy basis at vertices 0..3; the three strokes between them
// define a Markov chain over {g, e} whose trajectories carry W01, Q_H and W23.

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ottoforge/controls.hpp"
#include "ottoforge/engine.hpp"

namespace ottoforge {

/// p(j, i) is the probability of finding level j at the end of a stroke given
/// level i at its start (0 = ground, 1 = excited). Columns sum to 1.
struct TransitionMatrix {
  Eigen::Matrix2d p = Eigen::Matrix2d::Identity();
  double max_clip = 0.0;  // largest magnitude removed by clipping to [0, 1]

  double operator()(int to, int from) const { return p(to, from); }
};

/// Clip magnitude beyond which a transition probability is treated as an
/// integration failure rather than roundoff.
constexpr double kTransitionClipTol = 1e-7;

TransitionMatrix transition_matrix(const Superoperator& propagator, const EnergyBasis& from,
                                   const EnergyBasis& to);
TransitionMatrix transition_matrix(const StrokeConfig& stroke, int substeps = kDefaultSubsteps);

struct Trajectory {
  std::array<int, 4> levels{};  // n, m, s, v
  double probability = 0.0;
  double w01 = 0.0;
  double q_h = 0.0;
  double w23 = 0.0;
};

struct TrajectoryDistribution {
  std::array<Trajectory, 16> entries;
  std::array<double, 2> initial{};  // p_n at vertex 0
  std::array<TransitionMatrix, 4> strokes;
  double omega_cold = 0.0;
  double omega_hot = 0.0;

  double total_probability() const;
};

/// Source of the vertex-0 populations p_n.
///
/// unmonitored: diagonal of the limit-cycle state in the cold eigenbasis.
/// monitored: stationary vector of the measured (vertex-dephased) chain.
enum class InitialPopulations { unmonitored, monitored };

std::string_view to_string(InitialPopulations source);
std::optional<InitialPopulations> parse_initial_populations(std::string_view text);

TrajectoryDistribution joint_distribution(const CycleSolution& solution,
                                          InitialPopulations source = InitialPopulations::unmonitored);
TrajectoryDistribution joint_distribution(const CycleConfig& config,
                                          InitialPopulations source = InitialPopulations::unmonitored);

enum class CurrentKind { power, heat_rate };

std::string_view to_string(CurrentKind kind);

struct SupportPoint {
  double value = 0.0;
  double probability = 0.0;
};

struct CurrentDistribution {
  CurrentKind kind = CurrentKind::power;
  std::vector<SupportPoint> support;  // sorted by value

  double total_probability() const;
};

/// Probabilities below this are dropped from the support.
constexpr double kSupportFloor = 1e-15;

/// Aggregates trajectories into P = -(W01 + W23) / tau or Q_H / tau.
CurrentDistribution current_distribution(const TrajectoryDistribution& joint, CurrentKind kind,
                                         double tau_cycle);

/// sum_k p_k v_k^order.
double moment(const CurrentDistribution& dist, int order);

struct Fluctuations {
  double mean = 0.0;
  double variance_rate = 0.0;  // tau * (<X^2> - <X>^2)
  std::optional<double> fano;  // variance_rate / mean^2, absent at zero mean
};

Fluctuations fano_and_variance(const CurrentDistribution& dist, double tau_cycle);

struct MeasuredPerformance {
  TrajectoryDistribution joint;
  CurrentDistribution power_distribution;
  CurrentDistribution heat_distribution;
  Fluctuations power;
  Fluctuations heat_rate;
  double mean_q_h = 0.0;  // per cycle

  double mean_power() const { return power.mean; }
};

MeasuredPerformance measured_performance(const CycleSolution& solution,
                                         InitialPopulations source = InitialPopulations::unmonitored);
MeasuredPerformance measured_performance(const CycleConfig& config,
                                         InitialPopulations source = InitialPopulations::unmonitored);

}  // namespace ottoforge
