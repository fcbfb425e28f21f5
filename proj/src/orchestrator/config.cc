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

#include "l2t/orchestrator/config.h"

#include <cmath>
#include <string>

namespace l2t {
namespace {

void Require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

void CheckHidden(const std::vector<int>& hidden, const std::string& key) {
  Require(!hidden.empty(), key, "needs at least one hidden layer");
  for (int h : hidden) Require(h > 0, key, "layer widths must be positive");
}

void CheckRate(double v, const std::string& key) {
  Require(std::isfinite(v) && v > 0.0, key, "must be a positive number");
}

}  // namespace

std::string_view AlgorithmString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kL2tRl:
      return "l2t_rl";
    case Algorithm::kL2tIrl:
      return "l2t_irl";
    case Algorithm::kTwoStageBc:
      return "two_stage_bc";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "l2t_rl") return Algorithm::kL2tRl;
  if (name == "l2t_irl") return Algorithm::kL2tIrl;
  if (name == "two_stage_bc") return Algorithm::kTwoStageBc;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void ValidateConfig(const ExperimentConfig& cfg) {
  Require(cfg.warmup_steps >= 0, "experiment.warmup_steps", "must be >= 0");
  Require(cfg.total_steps >= cfg.warmup_steps, "experiment.total_steps",
          "must be >= experiment.warmup_steps");
  Require(cfg.eval_interval >= 1, "experiment.eval_interval", "must be >= 1");
  Require(cfg.eval_episodes >= 1, "experiment.eval_episodes", "must be >= 1");
  Require(cfg.final_eval_episodes >= 1, "experiment.final_eval_episodes",
          "must be >= 1");
  Require(!cfg.seeds.empty(), "experiment.seeds", "needs at least one seed");
  Require(cfg.batch_size >= 1, "experiment.batch_size", "must be >= 1");
  Require(cfg.buffer_capacity >= 1, "experiment.buffer_capacity",
          "must be >= 1");
  Require(cfg.loss_log_interval >= 1, "experiment.loss_log_interval",
          "must be >= 1");

  Require(std::isfinite(cfg.alpha) && cfg.alpha >= 0.0, "noise.alpha",
          "must be >= 0");
  Require(cfg.curriculum_fraction >= 0.0 && cfg.curriculum_fraction <= 1.0,
          "noise.curriculum_fraction", "must lie in [0, 1]");

  CheckHidden(cfg.teacher.hidden, "teacher.hidden");
  CheckRate(cfg.teacher.actor_lr, "teacher.actor_lr");
  CheckRate(cfg.teacher.critic_lr, "teacher.critic_lr");
  Require(cfg.teacher.tau > 0.0 && cfg.teacher.tau <= 1.0, "teacher.tau",
          "must lie in (0, 1]");
  Require(cfg.teacher.gamma >= 0.0 && cfg.teacher.gamma < 1.0, "teacher.gamma",
          "must lie in [0, 1)");
  Require(std::isfinite(cfg.teacher.entropy_temp) &&
              cfg.teacher.entropy_temp >= 0.0,
          "teacher.entropy_temp", "must be >= 0");

  CheckHidden(cfg.student.hidden, "student.hidden");
  CheckRate(cfg.student.lr, "student.lr");
  Require(cfg.student.combined_bc_p == 1 || cfg.student.combined_bc_p == 2,
          "student.combined_bc_p", "must be 1 or 2");
  Require(cfg.student.bc_log_std_weight >= 0.0, "student.bc_log_std_weight",
          "must be >= 0");

  CheckHidden(cfg.reward.hidden, "irl.hidden");
  CheckRate(cfg.reward.eta, "irl.eta");
  Require(cfg.reward.psi_coeff >= 0.0, "irl.psi_coeff", "must be >= 0");
  Require(cfg.reward.output_bound > 0.0, "irl.output_bound", "must be > 0");
  Require(cfg.demo_episodes >= 1, "irl.demo_episodes", "must be >= 1");

  Require(cfg.bc_steps >= 0, "bc.steps", "must be >= 0");
  Require(cfg.bc_p == 1 || cfg.bc_p == 2, "bc.p", "must be 1 or 2");

  Require(cfg.sweep_parameter == "alpha" || cfg.sweep_parameter == "loss_mode",
          "sweep.parameter", "must be alpha or loss_mode");
  Require(!cfg.sweep_values.empty(), "sweep.values", "needs at least one value");
  for (const std::string& v : cfg.sweep_values) {
    if (cfg.sweep_parameter == "alpha") {
      double a = 0.0;
      try {
        std::size_t used = 0;
        a = std::stod(v, &used);
        Require(used == v.size(), "sweep.values", "'" + v + "' is not a number");
      } catch (const std::logic_error&) {
        throw ConfigError("sweep.values", "'" + v + "' is not a number");
      }
      Require(a >= 0.0, "sweep.values", "alpha values must be >= 0");
    } else {
      try {
        ParseStudentLossMode(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep.values", e.what());
      }
    }
  }
}

CurriculumSchedule MakeCurriculum(CurriculumShape shape, double alpha_target,
                                  double fraction, std::int64_t steps) {
  CurriculumSchedule schedule;
  schedule.alpha_target = alpha_target;
  schedule.shape = shape;
  schedule.ramp_steps =
      static_cast<std::int64_t>(std::llround(fraction * static_cast<double>(steps)));
  return schedule;
}

}  // namespace l2t
