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

#ifndef L2T_ORCHESTRATOR_CONFIG_H_
#define L2T_ORCHESTRATOR_CONFIG_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "l2t/envs/env.h"
#include "l2t/envs/noise.h"
#include "l2t/irl/reward_model.h"
#include "l2t/student/student.h"
#include "l2t/teacher/teacher.h"

namespace l2t {

enum class Algorithm { kL2tRl, kL2tIrl, kTwoStageBc };

std::string_view AlgorithmString(Algorithm algorithm);
// Throws std::invalid_argument for unknown names.
Algorithm ParseAlgorithm(std::string_view name);

// Invalid or inconsistent configuration. The message starts with the
// offending key path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  EnvName env = EnvName::kPendulum;
  Algorithm algorithm = Algorithm::kL2tRl;
  std::int64_t total_steps = 100000;
  std::int64_t warmup_steps = 1000;
  std::int64_t eval_interval = 5000;
  int eval_episodes = 5;
  // Episodes of the evaluation taken after the last step.
  int final_eval_episodes = 5;
  std::vector<std::uint64_t> seeds{1};
  int batch_size = 256;
  std::int64_t buffer_capacity = 1000000;
  // A loss record every this many updates.
  std::int64_t loss_log_interval = 1;

  // Target noise scale and its schedule.
  double alpha = 0.4;
  CurriculumShape curriculum = CurriculumShape::kLinear;
  // Ramp length as a fraction of total_steps.
  double curriculum_fraction = 0.3;

  TeacherConfig teacher;
  StudentConfig student;

  RewardModelConfig reward;
  std::string demo_path;
  int demo_episodes = 5;
  std::uint64_t demo_seed = 12345;

  // Two-stage baseline: extra env steps for the student, BC norm, and an
  // optional frozen teacher checkpoint (trained first when empty).
  std::int64_t bc_steps = 100000;
  int bc_p = 1;
  std::string teacher_checkpoint;

  // Sweeps: parameter name ("alpha" or "loss_mode") and its values.
  std::string sweep_parameter = "alpha";
  std::vector<std::string> sweep_values{"0.1", "0.2", "0.3", "0.4"};

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Throws ConfigError naming the first violated field.
void ValidateConfig(const ExperimentConfig& cfg);

// The schedule the student view uses for a run of `steps` steps.
CurriculumSchedule MakeCurriculum(CurriculumShape shape, double alpha_target,
                                  double fraction, std::int64_t steps);

}  // namespace l2t

#endif  // L2T_ORCHESTRATOR_CONFIG_H_
