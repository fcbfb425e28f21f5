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

#include "l2t/irl/reward_model.h"

#include <cmath>
#include <stdexcept>

#include "l2t/numcore/errors.h"

namespace l2t {

RewardModel::RewardModel(int input_dim, int action_dim,
                         const RewardModelConfig& config,
                         std::mt19937_64& init_rng)
    : config_(config) {
  if (config.psi_coeff < 0.0) throw std::invalid_argument("psi_coeff < 0");
  if (!(config.output_bound > 0.0)) {
    throw std::invalid_argument("output_bound must be > 0");
  }
  std::vector<int> dims{input_dim + action_dim};
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(1);
  net_ = Mlp(dims, config.activation, init_rng);
  opt_ = Adam(net_.Parameters(), AdamOptions{.learning_rate = config.eta});
}

RewardModel::RewardModel(const RewardModel& other)
    : config_(other.config_), net_(other.net_), opt_(other.opt_) {
  opt_.Rebind(net_.Parameters());
}

RewardModel& RewardModel::operator=(const RewardModel& other) {
  if (this != &other) {
    config_ = other.config_;
    net_ = other.net_;
    opt_ = other.opt_;
    opt_.Rebind(net_.Parameters());
  }
  return *this;
}

Matrix RewardModel::Inputs(const Matrix& inputs, const Matrix& actions) const {
  if (inputs.rows() != actions.rows()) {
    throw DimensionError("reward inputs and actions have different rows");
  }
  if (inputs.cols() + actions.cols() != net_.input_dim()) {
    throw DimensionError("reward model expects " +
                         std::to_string(net_.input_dim()) + " input columns");
  }
  Matrix x(inputs.rows(), inputs.cols() + actions.cols());
  x << inputs, actions;
  return x;
}

Matrix RewardModel::Estimate(const Matrix& inputs,
                             const Matrix& actions) const {
  const double bound = config_.output_bound;
  return net_.Evaluate(Inputs(inputs, actions)).cwiseMax(-bound).cwiseMin(bound);
}

IrlBatchEstimate RewardModel::EstimateBatches(const Matrix& expert_inputs,
                                              const Matrix& expert_actions,
                                              const Matrix& policy_inputs,
                                              const Matrix& policy_actions) const {
  return {Estimate(policy_inputs, policy_actions),
          Estimate(expert_inputs, expert_actions)};
}

double RewardModel::Objective(const Matrix& expert_inputs,
                              const Matrix& expert_actions,
                              const Matrix& policy_inputs,
                              const Matrix& policy_actions) const {
  const Matrix re = Estimate(expert_inputs, expert_actions);
  const Matrix rp = Estimate(policy_inputs, policy_actions);
  const double n = static_cast<double>(re.size() + rp.size());
  const double reg =
      config_.psi_coeff * (re.squaredNorm() + rp.squaredNorm()) / n;
  return re.mean() - rp.mean() - reg;
}

double RewardModel::ComputeGradient(const Matrix& expert_inputs,
                                    const Matrix& expert_actions,
                                    const Matrix& policy_inputs,
                                    const Matrix& policy_actions) {
  if (expert_inputs.rows() == 0 || policy_inputs.rows() == 0) {
    throw ContractError("reward update needs nonempty batches");
  }
  const double bound = config_.output_bound;
  Tape tape;
  Var re = Clamp(
      net_.Forward(tape, tape.Constant(Inputs(expert_inputs, expert_actions))),
      -bound, bound);
  Var rp = Clamp(
      net_.Forward(tape, tape.Constant(Inputs(policy_inputs, policy_actions))),
      -bound, bound);
  // Minimize -J.
  Var loss = Sub(MeanAll(rp), MeanAll(re));
  if (config_.psi_coeff > 0.0) {
    const double n = static_cast<double>(re.rows() + rp.rows());
    Var sq = Add(SumAll(Square(re)), SumAll(Square(rp)));
    loss = Add(loss, Scale(sq, config_.psi_coeff / n));
  }
  const double objective = -loss.scalar();
  if (!std::isfinite(objective)) {
    throw NumericError("reward objective is not finite");
  }
  opt_.ZeroGrad();
  tape.Backward(loss);
  return objective;
}

double RewardModel::Update(const Matrix& expert_inputs,
                           const Matrix& expert_actions,
                           const Matrix& policy_inputs,
                           const Matrix& policy_actions) {
  const double objective = ComputeGradient(expert_inputs, expert_actions,
                                           policy_inputs, policy_actions);
  opt_.Step();
  return objective;
}

void RewardModel::AppendTo(NamedTensors& out, const std::string& prefix) const {
  AppendMlp(out, prefix, net_);
}

void RewardModel::RestoreFrom(const NamedTensors& in,
                              const std::string& prefix) {
  RestoreMlp(in, prefix, net_);
}

double IrlObjectiveValue(const RewardModel& model, const Matrix& expert_inputs,
                         const Matrix& expert_actions,
                         const Matrix& policy_inputs,
                         const Matrix& policy_actions,
                         double entropy_estimate) {
  return model.Objective(expert_inputs, expert_actions, policy_inputs,
                         policy_actions) -
         entropy_estimate;
}

double TeacherRewardUpdate(RewardModel& model, const Matrix& expert_states,
                           const Matrix& expert_actions,
                           const Matrix& policy_states,
                           const Matrix& policy_actions,
                           double policy_entropy_estimate) {
  return model.Update(expert_states, expert_actions, policy_states,
                      policy_actions) -
         policy_entropy_estimate;
}

double StudentRewardUpdate(RewardModel& model, const Matrix& expert_states,
                           const Matrix& expert_actions,
                           const Matrix& policy_observations,
                           const Matrix& policy_actions) {
  return model.Update(expert_states, expert_actions, policy_observations,
                      policy_actions);
}

}  // namespace l2t
