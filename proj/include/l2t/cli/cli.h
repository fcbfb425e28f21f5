// Copyright 2026 The l2tlab Authors
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

#ifndef L2T_CLI_CLI_H_
#define L2T_CLI_CLI_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "l2t/orchestrator/config.h"

namespace l2t::cli {

enum class Verb { kTrain, kEval, kSweep, kExport, kGenDemos };

std::string_view VerbString(Verb verb);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

struct CliCommand {
  Verb verb = Verb::kTrain;
  // Empty: start from the built-in defaults.
  std::filesystem::path config_path;
  std::vector<std::string> overrides;
  // Relative paths resolve against $L2T_OUTPUT_ROOT when it is set.
  std::filesystem::path output_dir;

  // eval
  std::filesystem::path checkpoint;
  std::string agent = "student";
  int episodes = 0;  // 0: experiment.final_eval_episodes
  // export
  std::filesystem::path metrics_path;
  std::filesystem::path csv_path;
  // gen-demos
  std::filesystem::path demo_out;
};

// Reads `path` (when nonempty), applies the overrides, and validates.
// Throws ConfigError with the key path on any problem, including a missing
// file.
ExperimentConfig ParseConfig(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides);

// Output directory after applying $L2T_OUTPUT_ROOT and the default
// `<algorithm>_<env>` name.
std::filesystem::path ResolveOutputDir(const CliCommand& cmd,
                                       const ExperimentConfig& cfg);

// Executes the command. Returns kExitConfigError for configuration problems
// and kExitRuntimeError for any failure during the run (including NaN
// aborts), after printing a diagnostic to `err`.
int Run(const CliCommand& cmd, std::ostream& out, std::ostream& err);

// Parses argv and runs.
int Main(int argc, char** argv);

// Build version (git describe when available).
std::string_view Version();

}  // namespace l2t::cli

#endif  // L2T_CLI_CLI_H_
