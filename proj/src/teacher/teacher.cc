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

#include "l2t/teacher/teacher.h"

#include <cmath>
#include <string>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

std::vector<int> CriticDims(int state_dim, int action_dim,
                            const std::vector<int>& hidden) {
  std::vector<int> dims{state_dim + action_dim};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(1);
  return dims;
}

Matrix Concat(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

void CheckFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string(what) + " is not finite");
  }
}

}  // namespace

CriticEnsemble::CriticEnsemble(int state_dim, int action_dim,
                               const std::vector<int>& hidden,
                               Activation activation, double tau,
                               std::mt19937_64& rng)
    : tau_(tau) {
  const auto dims = CriticDims(state_dim, action_dim, hidden);
  q1_ = Mlp(dims, activation, rng);
  q2_ = Mlp(dims, activation, rng);
  q1_target_ = q1_;
  q2_target_ = q2_;
}

Matrix CriticEnsemble::MinQ(const Matrix& states, const Matrix& actions) const {
  const Matrix sa = Concat(states, actions);
  return q1_.Evaluate(sa).cwiseMin(q2_.Evaluate(sa));
}

Matrix CriticEnsemble::MinTargetQ(const Matrix& states,
                                  const Matrix& actions) const {
  const Matrix sa = Concat(states, actions);
  return q1_target_.Evaluate(sa).cwiseMin(q2_target_.Evaluate(sa));
}

Var CriticEnsemble::MinQ(Tape& tape, const Var& states, const Var& actions) {
  Var sa = ConcatCols(states, actions);
  return Minimum(q1_.Forward(tape, sa, /*trainable=*/false),
                 q2_.Forward(tape, sa, /*trainable=*/false));
}

void CriticEnsemble::PolyakUpdate() {
  q1_target_.BlendFrom(q1_, tau_);
  q2_target_.BlendFrom(q2_, tau_);
}

TeacherAgent::TeacherAgent(const EnvSpec& spec, const TeacherConfig& config,
                           std::mt19937_64& init_rng)
    : spec_(spec), config_(config) {
  if (config.entropy_temp < 0.0) {
    throw std::invalid_argument("entropy_temp must be >= 0");
  }
  policy_ = GaussianPolicy(spec.state_dim, spec.action_dim, config.hidden,
                           config.activation, init_rng);
  critics_ = CriticEnsemble(spec.state_dim, spec.action_dim, config.hidden,
                            config.activation, config.tau, init_rng);
  actor_opt_ = Adam(policy_.net().Parameters(),
                    AdamOptions{.learning_rate = config.actor_lr});
  std::vector<Tensor*> critic_params = critics_.q1().Parameters();
  for (Tensor* t : critics_.q2().Parameters()) critic_params.push_back(t);
  critic_opt_ = Adam(critic_params, AdamOptions{.learning_rate = config.critic_lr});
}

TeacherAgent::TeacherAgent(const TeacherAgent& other)
    : spec_(other.spec_),
      config_(other.config_),
      policy_(other.policy_),
      critics_(other.critics_),
      actor_opt_(other.actor_opt_),
      critic_opt_(other.critic_opt_) {
  BindOptimizers();
}

TeacherAgent& TeacherAgent::operator=(const TeacherAgent& other) {
  if (this != &other) {
    spec_ = other.spec_;
    config_ = other.config_;
    policy_ = other.policy_;
    critics_ = other.critics_;
    actor_opt_ = other.actor_opt_;
    critic_opt_ = other.critic_opt_;
    BindOptimizers();
  }
  return *this;
}

void TeacherAgent::BindOptimizers() {
  actor_opt_.Rebind(policy_.net().Parameters());
  std::vector<Tensor*> critic_params = critics_.q1().Parameters();
  for (Tensor* t : critics_.q2().Parameters()) critic_params.push_back(t);
  critic_opt_.Rebind(critic_params);
}

Matrix TeacherAgent::TdTargets(const Matrix& rewards, const Matrix& next_states,
                               const Matrix& done, std::mt19937_64& rng) const {
  const SquashedSample next = policy_.Sample(next_states, rng);
  const Matrix soft_value =
      critics_.MinTargetQ(next_states, next.action) -
      config_.entropy_temp * next.log_prob;
  return (rewards.array() +
          config_.gamma * (1.0 - done.array()) * soft_value.array())
      .matrix();
}

double TeacherAgent::CriticUpdate(const Matrix& states, const Matrix& actions,
                                  const Matrix& rewards,
                                  const Matrix& next_states, const Matrix& done,
                                  std::mt19937_64& rng) {
  if (states.rows() == 0) throw ContractError("empty critic batch");
  const Matrix targets = TdTargets(rewards, next_states, done, rng);
  Tape tape;
  Var sa = tape.Constant(Concat(states, actions));
  Var y = tape.Constant(targets);
  Var loss = Add(MeanAll(Square(Sub(critics_.q1().Forward(tape, sa), y))),
                 MeanAll(Square(Sub(critics_.q2().Forward(tape, sa), y))));
  CheckFinite(loss.scalar(), "critic loss");
  critic_opt_.ZeroGrad();
  tape.Backward(loss);
  critic_opt_.Step();
  return loss.scalar();
}

double TeacherAgent::ActorLoss(const Matrix& states, const Matrix& noise) {
  Tape tape;
  Var s = tape.Constant(states);
  HeadVars head = policy_.Distribution(tape, s, /*trainable=*/false);
  SquashedSampleVar sample = SampleSquashed(head.mean, head.log_std, noise);
  Var q = critics_.MinQ(tape, s, sample.action);
  return MeanAll(Sub(Scale(sample.log_prob, config_.entropy_temp), q)).scalar();
}

double TeacherAgent::ActorUpdate(const Matrix& states, std::mt19937_64& rng) {
  if (states.rows() == 0) throw ContractError("empty actor batch");
  const Matrix noise =
      StandardNormal(static_cast<int>(states.rows()), spec_.action_dim, rng);
  Tape tape;
  Var s = tape.Constant(states);
  HeadVars head = policy_.Distribution(tape, s);
  SquashedSampleVar sample = SampleSquashed(head.mean, head.log_std, noise);
  Var q = critics_.MinQ(tape, s, sample.action);
  Var loss = MeanAll(Sub(Scale(sample.log_prob, config_.entropy_temp), q));
  CheckFinite(loss.scalar(), "actor loss");
  actor_opt_.ZeroGrad();
  tape.Backward(loss);
  actor_opt_.Step();
  return loss.scalar();
}

Vector PolicyAct(const EnvSpec& spec, const GaussianPolicy& policy,
                 const Vector& input, bool deterministic,
                 std::mt19937_64& rng) {
  const Matrix row = input.transpose();
  const Matrix a = deterministic ? policy.DeterministicAction(row)
                                 : policy.Sample(row, rng).action;
  return ToEnvAction(spec, a.row(0).transpose());
}

Vector TeacherAgent::Act(const Vector& s, bool deterministic,
                         std::mt19937_64& rng) const {
  if (s.size() != spec_.state_dim) {
    throw DimensionError("teacher expects a state of size " +
                         std::to_string(spec_.state_dim));
  }
  return PolicyAct(spec_, policy_, s, deterministic, rng);
}

NamedTensors TeacherAgent::Save() const {
  NamedTensors out;
  AppendMlp(out, "teacher.policy.", policy_.net());
  AppendMlp(out, "teacher.q1.", critics_.q1());
  AppendMlp(out, "teacher.q2.", critics_.q2());
  AppendMlp(out, "teacher.q1_target.", critics_.q1_target());
  AppendMlp(out, "teacher.q2_target.", critics_.q2_target());
  return out;
}

void TeacherAgent::Load(const NamedTensors& tensors) {
  RestoreMlp(tensors, "teacher.policy.", policy_.net());
  RestoreMlp(tensors, "teacher.q1.", critics_.q1());
  RestoreMlp(tensors, "teacher.q2.", critics_.q2());
  RestoreMlp(tensors, "teacher.q1_target.", critics_.q1_target());
  RestoreMlp(tensors, "teacher.q2_target.", critics_.q2_target());
}

}  // namespace l2t
