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

#pragma once

#include <string_view>

#include "ottoforge/engine.hpp"
#include "ottoforge/fpms.hpp"

namespace ottoforge {

enum class Regime { engine, heat_pump, dissipator };

std::string_view to_string(Regime regime);

/// Currents within 1e-12 * energy_scale of zero count as zero.
double current_zero_tolerance(const CyclePerformance& perf);

/// engine: P > 0 and Q_H > 0. heat_pump: P < 0 with heat flowing from the hot
/// bath (Q_H > 0) to the cold one (Q_C < 0). Anything else dissipates work.
Regime classify_regime(const CyclePerformance& perf);

constexpr double kSecondLawTol = 1e-9;

/// (-beta_h Q_H - beta_c Q_C) / tau. Throws ModelViolationError below -1e-9.
double entropy_production_rate(const CyclePerformance& perf, double beta_h, double beta_c,
                               double tau_cycle);

/// Engine regime for fluctuation statistics: classify_regime gives engine and
/// the measured mean power and heat are also positive.
bool fluctuation_engine_regime(const CyclePerformance& perf, const MeasuredPerformance& measured);

struct TurReport {
  bool applicable = false;
  double lhs = 0.0;                  // F(P) = Delta_P^2 / P^2
  double rhs_entropy_form = 0.0;     // 2 / Sigma
  double rhs_efficiency_form = 0.0;  // 2 eta / (beta_c P (eta_C - eta))
  double forms_relative_gap = 0.0;
  double slack = 0.0;  // lhs - rhs_entropy_form
  bool satisfied = false;
};

constexpr double kTurTol = 1e-9;

/// Skipped (applicable = false) outside the fluctuation engine regime or when
/// eta >= eta_C.
TurReport tur_check(const CyclePerformance& perf, const MeasuredPerformance& measured,
                    double beta_h, double beta_c, double tau_cycle);

}  // namespace ottoforge
