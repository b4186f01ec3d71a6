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

#include "ottoforge/propagation.hpp"

#include <array>
#include <sstream>

#include "ottoforge/errors.hpp"

namespace ottoforge {

namespace {

constexpr std::array<std::pair<StrokeKind, std::string_view>, 4> kStrokeNames{{
    {StrokeKind::compression, "compression"},
    {StrokeKind::hot_isochore, "hot_isochore"},
    {StrokeKind::expansion, "expansion"},
    {StrokeKind::cold_isochore, "cold_isochore"},
}};

constexpr std::array<std::pair<Enhancement, std::string_view>, 3> kModeNames{{
    {Enhancement::NA, "NA"},
    {Enhancement::STA, "STA"},
    {Enhancement::QL, "QL"},
}};

}  // namespace

std::string_view to_string(StrokeKind kind) {
  for (const auto& [k, name] : kStrokeNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string_view to_string(Enhancement mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::optional<Enhancement> parse_enhancement(std::string_view text) {
  for (const auto& [m, name] : kModeNames) {
    if (name == text) return m;
  }
  return std::nullopt;
}

std::optional<StrokeKind> parse_stroke_kind(std::string_view text) {
  for (const auto& [k, name] : kStrokeNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

bool is_isentrope(StrokeKind kind) {
  return kind == StrokeKind::compression || kind == StrokeKind::expansion;
}

StrokeConfig StrokeConfig::isentrope(StrokeKind kind, double omega_x, double omega_z_start,
                                     double omega_z_end, double duration, const NoiseSpec& noise,
                                     Enhancement enhancement) {
  StrokeConfig s;
  s.kind = kind;
  s.duration = duration;
  s.omega_x = omega_x;
  if (duration > 0.0) {
    s.ramp = RampSpec{omega_z_start, omega_z_end, duration};
  }
  s.omega_z = omega_z_start;
  s.noise = noise;
  s.enhancement = enhancement;
  s.validate();
  return s;
}

StrokeConfig StrokeConfig::isochore(StrokeKind kind, double omega_x, double omega_z,
                                    double duration, const BathParams& bath,
                                    const NoiseSpec& noise) {
  StrokeConfig s;
  s.kind = kind;
  s.duration = duration;
  s.omega_x = omega_x;
  s.omega_z = omega_z;
  s.bath = bath;
  s.noise = noise;
  s.validate();
  return s;
}

void StrokeConfig::validate() const {
  if (!(duration >= 0.0)) {
    throw InvalidArgument("stroke duration must be non-negative");
  }
  if (!(omega_x > 0.0)) {
    throw InvalidArgument("omega_x must be positive");
  }
  noise.validate();
  if (is_isentrope(kind)) {
    if (bath) {
      throw InvalidArgument("isentropes are decoupled from the baths");
    }
    if (duration > 0.0) {
      if (!ramp) {
        throw InvalidArgument("isentrope needs a ramp");
      }
      ramp->validate();
      if (ramp->duration != duration) {
        throw InvalidArgument("ramp duration differs from stroke duration");
      }
    }
  } else {
    if (ramp) {
      throw InvalidArgument("isochores hold the Hamiltonian fixed and take no ramp");
    }
    if (!bath) {
      throw InvalidArgument("isochore needs bath parameters");
    }
    bath->validate();
    if (enhancement != Enhancement::NA) {
      throw InvalidArgument("enhancements apply to isentropes only");
    }
  }
}

ControlField StrokeConfig::field() const {
  if (ramp) {
    return ControlField::ramped(omega_x, *ramp, enhancement == Enhancement::STA);
  }
  return ControlField::constant(omega_x, omega_z);
}

double StrokeConfig::omega_z_at(double t) const {
  return ramp ? ramp_value(*ramp, t) : omega_z;
}

double StrokeConfig::omega_z_start() const { return ramp ? ramp->omega_z_start : omega_z; }

double StrokeConfig::omega_z_end() const { return ramp ? ramp->omega_z_end : omega_z; }

bool StrokeConfig::lubricated() const {
  return is_isentrope(kind) && enhancement == Enhancement::QL && noise.ql_strength > 0.0;
}

bool StrokeConfig::counterdiabatic() const {
  return is_isentrope(kind) && enhancement == Enhancement::STA;
}

Superoperator liouvillian(const StrokeConfig& stroke, double t) {
  stroke.validate();
  if (t < 0.0 || t > stroke.duration * (1.0 + 1e-12)) {
    std::ostringstream why;
    why << "time " << t << " outside stroke [0, " << stroke.duration << "]";
    throw OutOfRange(why.str());
  }
  const ControlField field = stroke.field();
  const double oz = field.omega_z(t);

  Superoperator gen = commutator_superop(field.driving_hamiltonian(t));
  gen += control_noise_dissipator({oz, field.omega_y(t), stroke.omega_x}, stroke.noise);
  if (stroke.bath) {
    gen += bath_dissipator(stroke.omega_x, oz, *stroke.bath);
  }
  if (stroke.lubricated()) {
    gen += ql_dissipator(mixing_angle(stroke.omega_x, oz).theta, stroke.noise.ql_strength);
  }
  return gen;
}

Superoperator interval_propagator(const StrokeConfig& stroke, double t_begin, double t_end,
                                  int steps) {
  if (steps < 1) {
    throw InvalidArgument("need at least one substep");
  }
  const double span = t_end - t_begin;
  if (span == 0.0) {
    return Superoperator::Identity();
  }
  // a ramp between equal endpoints is a static generator too
  if (!stroke.ramp || stroke.ramp->omega_z_start == stroke.ramp->omega_z_end) {
    return expm(liouvillian(stroke, t_begin) * span);
  }
  const double dt = span / steps;
  Superoperator v = Superoperator::Identity();
  for (int k = 0; k < steps; ++k) {
    const double mid = t_begin + (k + 0.5) * dt;
    v = expm(liouvillian(stroke, mid) * dt) * v;
  }
  return v;
}

PropagatorResult stroke_propagator(const StrokeConfig& stroke, int substeps, bool estimate_error) {
  stroke.validate();
  if (substeps < 1) {
    throw InvalidArgument("substeps must be at least 1");
  }
  PropagatorResult result;
  result.substeps = substeps;
  if (stroke.duration == 0.0) {
    return result;
  }
  result.propagator = interval_propagator(stroke, 0.0, stroke.duration, substeps);
  if (estimate_error && stroke.ramp) {
    const Superoperator fine = interval_propagator(stroke, 0.0, stroke.duration, 2 * substeps);
    result.max_step_error_estimate = max_abs(fine - result.propagator);
  }
  const CptpReport report = cptp_check(result.propagator);
  if (!report.ok()) {
    std::ostringstream why;
    why << to_string(stroke.kind) << " propagator is not CPTP (trace error "
        << report.trace_error << ", Choi min " << report.choi_min_eigenvalue
        << "); increase substeps beyond " << substeps;
    throw IntegrationAccuracyError(why.str());
  }
  return result;
}

int evolution_substeps(int substeps, int samples) {
  if (samples < 2) {
    throw InvalidArgument("need at least two samples (start and end)");
  }
  const int segments = samples - 1;
  const int per_segment = (substeps + segments - 1) / segments;
  return per_segment * segments;
}

std::vector<StateSample> evolve_state(const DensityMatrix& rho, const StrokeConfig& stroke,
                                      int samples, int substeps) {
  stroke.validate();
  const int segments = samples - 1;
  const int per_segment = evolution_substeps(substeps, samples) / segments;
  const ControlField field = stroke.field();

  std::vector<StateSample> out;
  out.reserve(samples);
  Matrix2c current = rho.matrix();
  for (int j = 0; j < samples; ++j) {
    const double t = stroke.duration * j / segments;
    if (j > 0) {
      const double t_prev = stroke.duration * (j - 1) / segments;
      current = apply_map(interval_propagator(stroke, t_prev, t, per_segment), current);
    }
    DensityMatrix state = DensityMatrix::sanitized(current);
    const double energy = (field.system_hamiltonian(t) * state.matrix()).trace().real();
    out.push_back({t, state, energy});
  }
  return out;
}

}  // namespace ottoforge
