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

#include "ottoforge/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ottoforge/cli/csv.hpp"
#include "ottoforge/diagnostics.hpp"
#include "ottoforge/errors.hpp"
#include "ottoforge/oracle.hpp"
#include "ottoforge/parallel.hpp"

namespace ottoforge::cli {

using nlohmann::json;

int resolve_threads(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("OTTOFORGE_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
      throw ConfigError(std::string("OTTOFORGE_THREADS must be a positive integer, got '") + env +
                        "'");
    }
    return static_cast<int>(n);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

void point_fields(CsvWriter& csv, const GridPoint& p) {
  csv.field(to_string(p.mode)).field(p.tau).field(p.lambda).field(p.lambda_ql);
}

json point_json(const GridPoint& p) {
  return {{"mode", std::string(to_string(p.mode))},
          {"tau", p.tau},
          {"lambda", p.lambda},
          {"lambda_ql", p.lambda_ql}};
}

template <typename Result, typename Compute>
std::vector<Result> evaluate(const std::vector<GridPoint>& grid, int threads, Compute compute) {
  std::vector<Result> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    try {
      out[i] = compute(grid[i]);
    } catch (const std::exception& ex) {
      out[i].error = ex.what();
    }
  });
  return out;
}

struct EnergeticsRow {
  std::optional<CyclePerformance> perf;
  double entropy_rate = 0.0;
  ClosedFormBenchmarks bench;
  std::string error;
};

}  // namespace

int cmd_sweep(const RunConfig& run, std::ostream& out, const Options& options) {
  const auto grid = sweep_grid(run);
  const auto rows = evaluate<EnergeticsRow>(grid, options.threads, [](const GridPoint& p) {
    EnergeticsRow row;
    row.perf = energetics(p.config);
    row.entropy_rate = entropy_production_rate(*row.perf, p.config.beta_h, p.config.beta_c, p.tau);
    row.bench = closed_form_benchmarks(p.config);
    return row;
  });

  CsvWriter csv(out);
  csv.header({"mode", "tau", "lambda", "lambda_ql", "w01", "q_h", "w23", "q_c", "power",
              "efficiency", "entropy_rate", "regime", "eta_otto", "eta_carnot", "status"});
  int succeeded = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& row = rows[i];
    point_fields(csv, grid[i]);
    if (row.perf) {
      ++succeeded;
      const auto& p = *row.perf;
      csv.field(p.w01).field(p.q_h).field(p.w23).field(p.q_c).field(p.power).field(p.efficiency);
      csv.field(row.entropy_rate).field(to_string(classify_regime(p)));
      csv.field(row.bench.eta_otto).field(row.bench.eta_carnot).field("ok");
    } else {
      for (int k = 0; k < 10; ++k) csv.empty();
      csv.field("error: " + row.error);
      *options.log << "ottoforge: " << to_string(grid[i].mode) << " tau=" << grid[i].tau
                   << ": " << row.error << "\n";
    }
    csv.end_row();
  }
  return succeeded > 0 ? kExitOk : kExitFailure;
}

namespace {

struct FpmsRow {
  std::optional<CyclePerformance> perf;
  std::optional<MeasuredPerformance> measured;
  TurReport tur;
  std::optional<double> sigma;
  std::string regime;
  std::string error;
};

std::string fpms_regime(const CyclePerformance& perf, const MeasuredPerformance& measured) {
  const Regime r = classify_regime(perf);
  if (r == Regime::engine && !fluctuation_engine_regime(perf, measured)) {
    return "engine_coherent";
  }
  return std::string(to_string(r));
}

json distribution_json(const CurrentDistribution& d) {
  json values = json::array();
  json probs = json::array();
  for (const auto& [v, p] : d.support) {
    values.push_back(v);
    probs.push_back(p);
  }
  return {{"support", values}, {"probability", probs}};
}

}  // namespace

int cmd_fpms(const RunConfig& run, std::ostream& out, const Options& options) {
  const auto grid = sweep_grid(run);
  const InitialPopulations source = run.fpms.initial_populations;
  const auto rows = evaluate<FpmsRow>(grid, options.threads, [&](const GridPoint& p) {
    FpmsRow row;
    const CycleSolution solution = solve_cycle(p.config);
    row.perf = solution.performance;
    row.measured = measured_performance(solution, source);
    const double sigma =
        entropy_production_rate(*row.perf, p.config.beta_h, p.config.beta_c, p.tau);
    if (sigma > 0.0) row.sigma = sigma;
    row.tur = tur_check(*row.perf, *row.measured, p.config.beta_h, p.config.beta_c, p.tau);
    row.regime = fpms_regime(*row.perf, *row.measured);
    return row;
  });

  CsvWriter csv(out);
  csv.header({"mode", "tau", "lambda", "lambda_ql", "mean_power_4pms", "mean_qh_4pms",
              "var_power", "fano_power", "fano_qh", "tur_lhs", "tur_rhs", "tur_satisfied",
              "power", "regime", "status"});
  json dump = json::array();
  int succeeded = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& row = rows[i];
    point_fields(csv, grid[i]);
    if (row.measured) {
      ++succeeded;
      const auto& m = *row.measured;
      csv.field(m.power.mean).field(m.mean_q_h).field(m.power.variance_rate);
      csv.field(m.power.fano).field(m.heat_rate.fano);
      csv.field(m.power.fano);
      csv.field(row.sigma ? std::optional<double>(2.0 / *row.sigma) : std::nullopt);
      csv.field(row.tur.applicable ? std::optional<bool>(row.tur.satisfied) : std::nullopt);
      csv.field(row.perf->power).field(row.regime).field("ok");
      if (run.fpms.distributions) {
        json record = point_json(grid[i]);
        record["initial_populations"] = std::string(to_string(source));
        record["power"] = distribution_json(m.power_distribution);
        record["heat_rate"] = distribution_json(m.heat_distribution);
        dump.push_back(std::move(record));
      }
    } else {
      for (int k = 0; k < 10; ++k) csv.empty();
      csv.field("error: " + row.error);
      *options.log << "ottoforge: " << to_string(grid[i].mode) << " tau=" << grid[i].tau
                   << ": " << row.error << "\n";
    }
    csv.end_row();
  }
  if (run.fpms.distributions) {
    std::ofstream file(*run.fpms.distributions);
    if (!file) throw ConfigError("cannot write distribution dump " + *run.fpms.distributions);
    file << json{{"points", dump}}.dump(1) << "\n";
  }
  return succeeded > 0 ? kExitOk : kExitFailure;
}

namespace {

json matrix_json(const Matrix2c& m) {
  json re = json::array();
  json im = json::array();
  for (int r = 0; r < 2; ++r) {
    re.push_back({m(r, 0).real(), m(r, 1).real()});
    im.push_back({m(r, 0).imag(), m(r, 1).imag()});
  }
  return {{"real", re}, {"imag", im}};
}

}  // namespace

int cmd_oracle(const RunConfig& run, std::ostream& out, const Options& options) {
  const OracleSpec& spec = run.oracle;
  const std::uint64_t seed = options.seed.value_or(spec.seed);
  json strokes = json::array();
  bool all_passed = true;
  std::uint64_t index = 0;
  for (StrokeKind kind : spec.strokes) {
    const StrokeConfig stroke = oracle_stroke(run, kind);
    const DensityMatrix initial = oracle_initial_state(run, stroke);
    const double dt = stroke.duration / spec.steps;
    // each stroke gets its own stream so adding strokes leaves others unchanged
    const std::uint64_t stroke_seed = trajectory_seed(seed, 1'000'000'007ULL + index++);
    const OracleReport report =
        oracle_check(stroke, initial, spec.trajectories, dt, stroke_seed, options.threads);
    if (report.run.criterion.warn) {
      *options.log << "ottoforge: warning: " << to_string(kind)
                   << " dt criterion lambda Omega^2 dt = " << report.run.criterion.value
                   << " exceeds " << kDtWarn << "\n";
    }
    bool passed = report.passed;
    json record{{"stroke", std::string(to_string(kind))},
                {"mode", std::string(to_string(stroke.enhancement))},
                {"lambda", stroke.noise.lambda_z},
                {"lambda_ql", stroke.noise.ql_strength},
                {"duration", stroke.duration},
                {"trajectories", report.run.n_trajectories},
                {"dt", dt},
                {"seed", stroke_seed},
                {"initial_state", std::string(to_string(spec.initial_state))},
                {"dt_criterion", report.run.criterion.value},
                {"comparison", report.run.comparison},
                {"std_error", report.run.std_error},
                {"allowance", report.allowance},
                {"threshold", report.threshold},
                {"mean_state", matrix_json(report.run.mean_state)},
                {"master_state", matrix_json(report.run.master_state)}};
    *options.log << to_string(kind) << ": comparison " << report.run.comparison << " vs 3 sigma + C dt "
                 << report.threshold << " -> " << (report.passed ? "PASS" : "FAIL") << "\n";
    if (!is_isentrope(kind) && stroke.noise.lambda_z > 0.0 && stroke.noise.lambda_x == 0.0) {
      const DephasingFit fit = fit_dephasing_rate(stroke, initial, report.run);
      record["dephasing_fit"] = {{"rate", fit.rate},
                                 {"std_error", fit.std_error},
                                 {"expected", fit.expected},
                                 {"consistent", fit.consistent}};
      *options.log << to_string(kind) << ": dephasing rate " << fit.rate << " +- "
                   << fit.std_error << " vs lambda Omega_z^2 = " << fit.expected << " -> "
                   << (fit.consistent ? "PASS" : "FAIL") << "\n";
      passed = passed && fit.consistent;
    }
    record["passed"] = passed;
    all_passed = all_passed && passed;
    strokes.push_back(std::move(record));
  }
  out << json{{"seed", seed}, {"passed", all_passed}, {"strokes", strokes}}.dump(1) << "\n";
  return all_passed ? kExitOk : kExitFailure;
}

namespace {

struct LimitCycleRow {
  std::optional<CycleSolution> solution;
  std::optional<int> transient_cycles;
  std::string error;
};

constexpr int kMaxTransientCycles = 1'000'000;

}  // namespace

int cmd_limit_cycle(const RunConfig& run, std::ostream& out, const Options& options) {
  const auto grid = sweep_grid(run);
  const auto rows = evaluate<LimitCycleRow>(grid, options.threads, [](const GridPoint& p) {
    LimitCycleRow row;
    row.solution = solve_cycle(p.config);
    const DensityMatrix start = gibbs_state(p.config.omega_x, p.config.omega_z_cold, p.config.beta_c);
    row.transient_cycles = cycles_to_converge(row.solution->propagators.cycle, start,
                                              row.solution->limit.state, kFixedPointTol,
                                              kMaxTransientCycles);
    return row;
  });

  json points = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    json record = point_json(grid[i]);
    const auto& row = rows[i];
    if (!row.solution) {
      all_ok = false;
      record["status"] = "error: " + row.error;
      *options.log << "ottoforge: " << to_string(grid[i].mode) << " tau=" << grid[i].tau << ": "
                   << row.error << "\n";
      points.push_back(std::move(record));
      continue;
    }
    const auto& s = *row.solution;
    const auto& perf = s.performance;
    json vertices = json::array();
    for (int v = 0; v < 4; ++v) {
      vertices.push_back({{"vertex", v},
                          {"rho", matrix_json(perf.vertex_states[v])},
                          {"energy", perf.vertex_energies[v]}});
    }
    record["vertices"] = vertices;
    record["w01"] = perf.w01;
    record["q_h"] = perf.q_h;
    record["w23"] = perf.w23;
    record["q_c"] = perf.q_c;
    record["balance_residual"] = perf.balance_residual;
    record["unit_eigenvalue"] = {s.limit.unit_eigenvalue.real(), s.limit.unit_eigenvalue.imag()};
    record["second_eigenvalue_modulus"] = s.limit.second_eigenvalue_modulus;
    record["spectral_gap"] = 1.0 - s.limit.second_eigenvalue_modulus;
    record["fixed_point_residual"] = s.limit.fixed_point_residual;
    record["transient_cycles"] =
        row.transient_cycles ? json(*row.transient_cycles) : json(nullptr);
    record["status"] = "ok";
    points.push_back(std::move(record));
  }
  out << json{{"points", points}}.dump(1) << "\n";
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace ottoforge::cli
