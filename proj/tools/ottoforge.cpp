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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ottoforge/cli/commands.hpp"
#include "ottoforge/errors.hpp"

namespace {

using namespace ottoforge;

constexpr const char* kUnits =
    "Energies in units of omega_x (hbar = k_B = 1); temperatures given as T, not beta.";

int dispatch(const std::string& command, const std::string& config_path,
             const std::string& out_path, std::optional<int> threads,
             std::optional<std::uint64_t> seed) {
  try {
    const cli::RunConfig run = cli::load_run_config(config_path);
    cli::Options options;
    options.threads = cli::resolve_threads(threads);
    options.seed = seed;

    std::ostringstream buffer;
    int code = cli::kExitOk;
    if (command == "sweep") {
      code = cli::cmd_sweep(run, buffer, options);
    } else if (command == "fpms") {
      code = cli::cmd_fpms(run, buffer, options);
    } else if (command == "oracle") {
      code = cli::cmd_oracle(run, buffer, options);
    } else {
      code = cli::cmd_limit_cycle(run, buffer, options);
    }

    if (out_path == "-") {
      std::cout << buffer.str();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "ottoforge: cannot write " << out_path << "\n";
        return cli::kExitFailure;
      }
      file << buffer.str();
    }
    return code;
  } catch (const cli::ConfigError& err) {
    std::cerr << "ottoforge: config error: " << err.what() << "\n";
    return cli::kExitConfig;
  } catch (const StepSizeError& err) {
    std::cerr << "ottoforge: refused: " << err.what() << "\n";
    return cli::kExitConfig;
  } catch (const InvalidArgument& err) {
    std::cerr << "ottoforge: invalid input: " << err.what() << "\n";
    return cli::kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "ottoforge: " << err.what() << "\n";
    return cli::kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("Noisy finite-time quantum Otto engine simulator.\n") + kUnits};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "-";
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"sweep", "Limit-cycle energetics over the sweep grid (CSV)"},
      {"fpms", "Four-point measurement statistics and TUR check over the sweep grid (CSV)"},
      {"oracle", "Trajectory average versus master equation on the oracle strokes (JSON)"},
      {"limit-cycle", "Vertex states, energies and spectral gap per grid point (JSON)"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "TOML run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Output path, '-' for stdout")->default_val("-");
    sub->add_option("--threads", threads,
                    "Worker threads (default: OTTOFORGE_THREADS, else all cores)");
    sub->add_option("--seed", seed, "Master seed for the oracle (overrides oracle.seed)");
    sub->footer(kUnits);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : cli::kExitConfig;
  }
  return dispatch(app.get_subcommands().front()->get_name(), config_path, out_path, threads, seed);
}
