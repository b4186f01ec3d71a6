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

#include "ottoforge/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ottoforge/errors.hpp"

namespace ottoforge {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::engine:
      return "engine";
    case Regime::heat_pump:
      return "heat_pump";
    case Regime::dissipator:
      return "dissipator";
  }
  return "unknown";
}

double current_zero_tolerance(const CyclePerformance& perf) { return 1e-12 * perf.energy_scale; }

Regime classify_regime(const CyclePerformance& perf) {
  const double zero = current_zero_tolerance(perf);
  const double extracted = -(perf.w01 + perf.w23);
  if (extracted > zero && perf.q_h > zero) return Regime::engine;
  if (extracted < -zero && perf.q_h > zero && perf.q_c < -zero) return Regime::heat_pump;
  return Regime::dissipator;
}

double entropy_production_rate(const CyclePerformance& perf, double beta_h, double beta_c,
                               double tau_cycle) {
  if (!(tau_cycle > 0.0)) return 0.0;
  const double rate = (-beta_h * perf.q_h - beta_c * perf.q_c) / tau_cycle;
  if (rate < -kSecondLawTol) {
    std::ostringstream why;
    why << "negative entropy production " << rate;
    throw ModelViolationError(why.str());
  }
  return rate;
}

bool fluctuation_engine_regime(const CyclePerformance& perf, const MeasuredPerformance& measured) {
  return classify_regime(perf) == Regime::engine && measured.power.mean > 0.0 &&
         measured.heat_rate.mean > 0.0;
}

TurReport tur_check(const CyclePerformance& perf, const MeasuredPerformance& measured,
                    double beta_h, double beta_c, double tau_cycle) {
  TurReport out;
  if (!fluctuation_engine_regime(perf, measured) || !perf.efficiency || !measured.power.fano) {
    return out;
  }
  const double eta = *perf.efficiency;
  const double eta_carnot = 1.0 - beta_h / beta_c;
  if (!(eta > 0.0) || !(eta < eta_carnot)) return out;

  const double sigma = entropy_production_rate(perf, beta_h, beta_c, tau_cycle);
  out.applicable = true;
  out.lhs = *measured.power.fano;
  out.rhs_entropy_form = 2.0 / sigma;
  out.rhs_efficiency_form = 2.0 * eta / (beta_c * perf.power * (eta_carnot - eta));
  out.forms_relative_gap = std::abs(out.rhs_entropy_form - out.rhs_efficiency_form) /
                           std::max(std::abs(out.rhs_entropy_form), std::abs(out.rhs_efficiency_form));
  out.slack = out.lhs - out.rhs_entropy_form;
  out.satisfied = out.slack >= -kTurTol;
  return out;
}

}  // namespace ottoforge
