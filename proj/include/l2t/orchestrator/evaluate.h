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

#ifndef L2T_ORCHESTRATOR_EVALUATE_H_
#define L2T_ORCHESTRATOR_EVALUATE_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "l2t/envs/env.h"
#include "l2t/numcore/policy.h"

namespace l2t {

// Mean and population standard deviation over evaluation episodes.
struct EvalStats {
  double return_mean = 0.0;
  double return_std = 0.0;
  double length_mean = 0.0;
  // Undiscounted per-step reward averaged over all evaluation steps.
  double average_reward = 0.0;
  std::vector<double> returns;
};

// Maps the controller's input (privileged state or noisy observation) to an
// environment-scaled action.
using Controller = std::function<Vector(const Vector&)>;

// Rolls out `episodes` episodes. Episode j starts from a reset seeded by
// (seed, j) and draws its observation noise from an independent stream of
// the same pair, so different controllers evaluated with the same seed face
// identical initial states. alpha == 0 passes the state through unchanged.
// Throws std::invalid_argument when episodes < 1.
EvalStats EvaluateController(const EnvSpec& spec, const Controller& controller,
                             double alpha, int episodes, std::uint64_t seed);

// Deterministic (tanh-mean) policy rollouts. A teacher is evaluated with
// alpha = 0 (privileged state); a student with its target alpha.
EvalStats EvaluatePolicy(const EnvSpec& spec, const GaussianPolicy& policy,
                         double alpha, int episodes, std::uint64_t seed);

// Uniform random actions, independent of the state.
EvalStats EvaluateRandomPolicy(const EnvSpec& spec, int episodes,
                               std::uint64_t seed);

EvalStats EvaluateOracle(const EnvSpec& spec, int episodes, std::uint64_t seed);

// True iff returns are non-increasing as alpha increases (ties allowed).
// Points may come in any order. Throws std::invalid_argument for fewer than
// two points.
bool AblationVerdict(std::vector<std::pair<double, double>> series);

}  // namespace l2t

#endif  // L2T_ORCHESTRATOR_EVALUATE_H_
