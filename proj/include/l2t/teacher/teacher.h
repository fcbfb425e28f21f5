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

#ifndef L2T_TEACHER_TEACHER_H_
#define L2T_TEACHER_TEACHER_H_

#include <random>
#include <vector>

#include "l2t/envs/env.h"
#include "l2t/numcore/adam.h"
#include "l2t/numcore/checkpoint.h"
#include "l2t/numcore/mlp.h"
#include "l2t/numcore/policy.h"

namespace l2t {

struct TeacherConfig {
  std::vector<int> hidden{64, 64};
  Activation activation = Activation::kRelu;
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  double tau = 0.005;
  double gamma = 0.99;
  double entropy_temp = 0.2;

  friend bool operator==(const TeacherConfig&, const TeacherConfig&) = default;
};

// Twin soft Q-functions over [state, normalized action] with Polyak-averaged
// targets.
class CriticEnsemble {
 public:
  CriticEnsemble() = default;
  CriticEnsemble(int state_dim, int action_dim, const std::vector<int>& hidden,
                 Activation activation, double tau, std::mt19937_64& rng);

  // Elementwise min of the two online critics, B x 1.
  Matrix MinQ(const Matrix& states, const Matrix& actions) const;
  Matrix MinTargetQ(const Matrix& states, const Matrix& actions) const;
  // min(q1, q2) on the tape with critic parameters frozen; gradients reach
  // `states`/`actions` only.
  Var MinQ(Tape& tape, const Var& states, const Var& actions);

  // target <- tau * online + (1 - tau) * target.
  void PolyakUpdate();

  Mlp& q1() { return q1_; }
  Mlp& q2() { return q2_; }
  Mlp& q1_target() { return q1_target_; }
  Mlp& q2_target() { return q2_target_; }
  const Mlp& q1() const { return q1_; }
  const Mlp& q2() const { return q2_; }
  const Mlp& q1_target() const { return q1_target_; }
  const Mlp& q2_target() const { return q2_target_; }
  double tau() const { return tau_; }

 private:
  Mlp q1_, q2_, q1_target_, q2_target_;
  double tau_ = 0.005;
};

// Privileged-state soft actor-critic agent. Every update takes the teacher
// view of a minibatch: states, normalized actions, rewards, next states,
// done flags.
class TeacherAgent {
 public:
  TeacherAgent() = default;
  TeacherAgent(const EnvSpec& spec, const TeacherConfig& config,
               std::mt19937_64& init_rng);
  TeacherAgent(const TeacherAgent& other);
  TeacherAgent& operator=(const TeacherAgent& other);
  TeacherAgent(TeacherAgent&&) = default;
  TeacherAgent& operator=(TeacherAgent&&) = default;

  // One optimizer step on mean (q_i(s, a) - y)^2 summed over both critics,
  // y = r + gamma (1 - done) (min target Q(s', a') - temp log pi(a'|s')),
  // a' ~ pi(.|s'). Returns the loss before the step. Throws NumericError on
  // a non-finite loss.
  double CriticUpdate(const Matrix& states, const Matrix& actions,
                      const Matrix& rewards, const Matrix& next_states,
                      const Matrix& done, std::mt19937_64& rng);
  // TD targets used by CriticUpdate (exposed for tests).
  Matrix TdTargets(const Matrix& rewards, const Matrix& next_states,
                   const Matrix& done, std::mt19937_64& rng) const;

  // One optimizer step on mean(temp log pi(a|s) - min Q(s, a)) with a
  // reparameterized from pi(.|s). Returns the loss before the step.
  double ActorUpdate(const Matrix& states, std::mt19937_64& rng);
  // Loss value only, with the given standard-normal noise.
  double ActorLoss(const Matrix& states, const Matrix& noise);

  void PolyakUpdate() { critics_.PolyakUpdate(); }

  // Environment-scaled action for one state.
  Vector Act(const Vector& s, bool deterministic, std::mt19937_64& rng) const;

  const EnvSpec& spec() const { return spec_; }
  const TeacherConfig& config() const { return config_; }
  void set_entropy_temp(double t) { config_.entropy_temp = t; }
  GaussianPolicy& policy() { return policy_; }
  const GaussianPolicy& policy() const { return policy_; }
  CriticEnsemble& critics() { return critics_; }
  const CriticEnsemble& critics() const { return critics_; }
  const Adam& actor_optimizer() const { return actor_opt_; }

  NamedTensors Save() const;
  void Load(const NamedTensors& tensors);

 private:
  void BindOptimizers();

  EnvSpec spec_;
  TeacherConfig config_;
  GaussianPolicy policy_;
  CriticEnsemble critics_;
  Adam actor_opt_;
  Adam critic_opt_;
};

Vector PolicyAct(const EnvSpec& spec, const GaussianPolicy& policy,
                 const Vector& input, bool deterministic, std::mt19937_64& rng);

}  // namespace l2t

#endif  // L2T_TEACHER_TEACHER_H_
