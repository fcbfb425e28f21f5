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

#ifndef L2T_ORCHESTRATOR_TRAINER_H_
#define L2T_ORCHESTRATOR_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "l2t/envs/noise.h"
#include "l2t/irl/reward_model.h"
#include "l2t/orchestrator/config.h"
#include "l2t/orchestrator/evaluate.h"
#include "l2t/orchestrator/metrics.h"
#include "l2t/replay/demonstrations.h"
#include "l2t/student/student.h"
#include "l2t/teacher/teacher.h"

namespace l2t {

// An extra student trained alongside the primary one on the same minibatch
// indices, with its own noise scale, schedule, and loss. Every student of a
// run starts from the same initial weights and draws its update and
// observation noise from the same seeded streams, so a variant configured
// like the primary student reproduces it exactly. Students never influence
// the teacher, so one run trains a whole cohort of ablation arms.
struct StudentVariant {
  std::string name;
  double alpha = 0.4;
  CurriculumShape curriculum = CurriculumShape::kLinear;
  StudentConfig config;
};

struct VariantOutcome {
  std::string name;
  double alpha = 0.0;
  StudentAgent agent;
  EvalStats final_eval;
  double best_return = 0.0;
};

struct RunOptions {
  // Checkpoints, metrics, config echo, and summary go here; empty disables
  // all file output.
  std::filesystem::path output_dir;
  std::vector<StudentVariant> extra_students;
  // L2T-IRL only: feed the environment reward to the critic through the
  // same code path and skip reward-model updates.
  bool expose_true_reward = false;
  // Version string recorded in run_info.json.
  std::string version = "unknown";
};

struct TrainResult {
  TeacherAgent teacher;
  // Snapshot with the highest periodic teacher evaluation return (the final
  // teacher when no periodic evaluation ran).
  TeacherAgent best_teacher;
  double best_teacher_return = 0.0;
  StudentAgent student;
  double best_student_return = 0.0;
  std::vector<VariantOutcome> variants;
  std::optional<RewardModel> teacher_reward;
  std::optional<RewardModel> student_reward;
  std::vector<EvalRecord> evals;
  // Empty when total_steps == 0.
  std::optional<EvalStats> final_teacher;
  std::optional<EvalStats> final_student;
  std::uint64_t teacher_env_steps = 0;
  std::uint64_t student_env_steps = 0;
  // Steps spent inside evaluation rollouts (not training interaction).
  std::uint64_t eval_env_steps = 0;
  std::int64_t updates = 0;
};

// Single-loop teacher-student training with the environment reward.
TrainResult TrainL2tRl(const ExperimentConfig& cfg, std::uint64_t seed,
                       const RunOptions& options = {});

// Same loop with a learned teacher reward fitted to `demos` and a logged
// student reward. Throws ContractError when `demos` is empty.
TrainResult TrainL2tIrl(const ExperimentConfig& cfg, std::uint64_t seed,
                        const ExpertBuffer& demos,
                        const RunOptions& options = {});

struct BcResult {
  StudentAgent student;
  double best_student_return = 0.0;
  std::vector<EvalRecord> evals;
  std::optional<EvalStats> final_student;
  std::uint64_t teacher_env_steps = 0;
  std::uint64_t student_env_steps = 0;
  std::uint64_t eval_env_steps = 0;
};

// Conventional second stage: the student gathers cfg.bc_steps fresh env
// steps acting on noisy observations and clones the frozen teacher's means
// with the L_{cfg.bc_p} loss.
BcResult TrainTwoStageBc(const ExperimentConfig& cfg, std::uint64_t seed,
                         const TeacherAgent& frozen_teacher,
                         const RunOptions& options = {});

// Scripted-oracle rollouts from resets seeded by (seed, episode). Appends
// the per-episode returns to `returns` when given.
ExpertBuffer GenerateOracleDemonstrations(const EnvSpec& spec, int episodes,
                                          std::uint64_t seed,
                                          std::vector<double>* returns = nullptr);

}  // namespace l2t

#endif  // L2T_ORCHESTRATOR_TRAINER_H_
