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

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>

#include "ottoforge/cli/run_config.hpp"

namespace ottoforge::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

struct Options {
  int threads = 1;
  std::optional<std::uint64_t> seed;  // overrides oracle.seed
  std::ostream* log = &std::cerr;
};

/// Thread count from the flag, else OTTOFORGE_THREADS, else the hardware.
int resolve_threads(std::optional<int> flag);

/// Energetics CSV. Exit 0 when at least one row succeeded.
int cmd_sweep(const RunConfig& run, std::ostream& out, const Options& options);

/// 4PMS statistics CSV, plus the optional distribution dump.
int cmd_fpms(const RunConfig& run, std::ostream& out, const Options& options);

/// Trajectory oracle; JSON report on `out`, summary on the log. Exit 1 on failure.
int cmd_oracle(const RunConfig& run, std::ostream& out, const Options& options);

/// Vertex states, energies and spectral data per grid point as JSON. Exit 1
/// when any point has no unique limit cycle.
int cmd_limit_cycle(const RunConfig& run, std::ostream& out, const Options& options);

}  // namespace ottoforge::cli
