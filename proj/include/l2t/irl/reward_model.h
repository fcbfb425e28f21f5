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

#ifndef L2T_IRL_REWARD_MODEL_H_
#define L2T_IRL_REWARD_MODEL_H_

#include <random>
#include <string>
#include <vector>

#include "l2t/numcore/adam.h"
#include "l2t/numcore/checkpoint.h"
#include "l2t/numcore/mlp.h"

namespace l2t {

struct RewardModelConfig {
  std::vector<int> hidden{64, 64};
  Activation activation = Activation::kRelu;
  double eta = 3e-4;
  double psi_coeff = 0.1;
  double output_bound = 10.0;

  friend bool operator==(const RewardModelConfig&,
                         const RewardModelConfig&) = default;
};

// Rewards of the two minibatches an IRL step contrasts.
struct IrlBatchEstimate {
  Matrix policy_rewards;  // one per policy-batch row
  Matrix expert_rewards;  // one per expert-batch row
};

// Learned reward r(x, a) over [input, normalized action] rows, clamped to
// [-output_bound, output_bound].
//
// The adversarial objective contrasts an expert batch E with a policy batch
// P, using minibatch means for the occupancy expectations:
//   J(r) = mean_E r - mean_P r - psi * mean_{E u P} r^2.
// Updates take one gradient ASCENT step on J. Expert and policy rows run
// through separate forward passes, so identical batches with psi = 0 cancel
// to an exactly zero gradient.
class RewardModel {
 public:
  RewardModel() = default;
  RewardModel(int input_dim, int action_dim, const RewardModelConfig& config,
              std::mt19937_64& init_rng);
  RewardModel(const RewardModel& other);
  RewardModel& operator=(const RewardModel& other);
  RewardModel(RewardModel&&) = default;
  RewardModel& operator=(RewardModel&&) = default;

  // B x 1 clamped rewards.
  Matrix Estimate(const Matrix& inputs, const Matrix& actions) const;
  IrlBatchEstimate EstimateBatches(const Matrix& expert_inputs,
                                   const Matrix& expert_actions,
                                   const Matrix& policy_inputs,
                                   const Matrix& policy_actions) const;

  // J(r) without stepping.
  double Objective(const Matrix& expert_inputs, const Matrix& expert_actions,
                   const Matrix& policy_inputs,
                   const Matrix& policy_actions) const;

  // Accumulates -dJ/dtheta into the parameter gradients (after zeroing them)
  // and returns J. Separate from Update so tests can inspect gradients.
  double ComputeGradient(const Matrix& expert_inputs,
                         const Matrix& expert_actions,
                         const Matrix& policy_inputs,
                         const Matrix& policy_actions);
  // One ascent step on J; returns J before the step. Throws NumericError on a
  // non-finite objective.
  double Update(const Matrix& expert_inputs, const Matrix& expert_actions,
                const Matrix& policy_inputs, const Matrix& policy_actions);

  const RewardModelConfig& config() const { return config_; }
  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }

  void AppendTo(NamedTensors& out, const std::string& prefix) const;
  void RestoreFrom(const NamedTensors& in, const std::string& prefix);

 private:
  Matrix Inputs(const Matrix& inputs, const Matrix& actions) const;

  RewardModelConfig config_;
  Mlp net_;
  Adam opt_;
};

// Saddle value mean_E r - mean_P r - H(pi) - psi * mean_{E u P} r^2, with
// the policy entropy supplied by the caller. Reported for diagnostics.
double IrlObjectiveValue(const RewardModel& model, const Matrix& expert_inputs,
                         const Matrix& expert_actions,
                         const Matrix& policy_inputs,
                         const Matrix& policy_actions,
                         double entropy_estimate);

// Teacher-side reward step: same ascent rule; H(pi) does not depend on the
// reward parameters and drops out of the gradient.
double TeacherRewardUpdate(RewardModel& model, const Matrix& expert_states,
                           const Matrix& expert_actions,
                           const Matrix& policy_states,
                           const Matrix& policy_actions,
                           double policy_entropy_estimate);

// Student-side reward step: expert rows are noiseless (s*, a*), policy rows
// are (o, a) from the student view of the replay batch.
double StudentRewardUpdate(RewardModel& model, const Matrix& expert_states,
                           const Matrix& expert_actions,
                           const Matrix& policy_observations,
                           const Matrix& policy_actions);

}  // namespace l2t

#endif  // L2T_IRL_REWARD_MODEL_H_
