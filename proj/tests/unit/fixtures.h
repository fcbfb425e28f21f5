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

#ifndef L2T_TESTS_UNIT_FIXTURES_H_
#define L2T_TESTS_UNIT_FIXTURES_H_

#include <array>
#include <cmath>
#include <random>

#include "l2t/envs/env.h"
#include "l2t/teacher/teacher.h"

namespace l2t::test {

// Two-state deterministic MDP with one-hot states and an action that has no
// effect. next[i] is the successor of state i, reward[i] the reward for
// leaving it.
struct TwoStateMdp {
  std::array<int, 2> next{1, 0};
  std::array<double, 2> reward{1.0, 0.0};
  double gamma = 0.9;
};

// Plain value iteration to machine precision.
inline std::array<double, 2> ValueIteration(const TwoStateMdp& mdp) {
  std::array<double, 2> v{0.0, 0.0};
  for (int it = 0; it < 2000; ++it) {
    std::array<double, 2> nv;
    for (int i = 0; i < 2; ++i) nv[i] = mdp.reward[i] + mdp.gamma * v[mdp.next[i]];
    v = nv;
  }
  return v;
}

inline EnvSpec TwoStateSpec(const TwoStateMdp& mdp) {
  EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  spec.state_dim = spec.obs_dim = 2;
  spec.action_dim = 1;
  spec.action_low = -1.0;
  spec.action_high = 1.0;
  spec.gamma = mdp.gamma;
  return spec;
}

struct FixedPointResult {
  std::array<double, 2> q{};      // mean over a grid of actions
  double max_action_spread = 0.0;  // max over states of max_a Q - min_a Q
  int updates = 0;
};

// Trains a teacher critic with zero entropy temperature on uniformly
// sampled (state, action) pairs of the MDP. Returns Q read off the online
// min-critic.
inline FixedPointResult TrainCriticOnTwoStateMdp(const TwoStateMdp& mdp,
                                                 int updates,
                                                 std::uint64_t seed) {
  TeacherConfig cfg;
  cfg.hidden = {32, 32};
  cfg.critic_lr = 1e-3;
  cfg.tau = 0.05;
  cfg.gamma = mdp.gamma;
  cfg.entropy_temp = 0.0;
  std::mt19937_64 rng(seed);
  TeacherAgent agent(TwoStateSpec(mdp), cfg, rng);
  const int batch = 64;
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> act(-1.0, 1.0);
  Matrix s(batch, 2), a(batch, 1), r(batch, 1), s2(batch, 2), d(batch, 1);
  d.setZero();
  for (int u = 0; u < updates; ++u) {
    s.setZero();
    s2.setZero();
    for (int b = 0; b < batch; ++b) {
      const int i = coin(rng) ? 1 : 0;
      s(b, i) = 1.0;
      s2(b, mdp.next[i]) = 1.0;
      a(b, 0) = act(rng);
      r(b, 0) = mdp.reward[i];
    }
    agent.CriticUpdate(s, a, r, s2, d, rng);
    agent.PolyakUpdate();
  }
  FixedPointResult out;
  out.updates = updates;
  const int grid = 21;
  for (int i = 0; i < 2; ++i) {
    Matrix gs = Matrix::Zero(grid, 2), ga(grid, 1);
    for (int g = 0; g < grid; ++g) {
      gs(g, i) = 1.0;
      ga(g, 0) = -1.0 + 2.0 * g / (grid - 1);
    }
    const Matrix q = agent.critics().MinQ(gs, ga);
    out.q[i] = q.mean();
    out.max_action_spread =
        std::max(out.max_action_spread, q.maxCoeff() - q.minCoeff());
  }
  return out;
}

}  // namespace l2t::test

#endif  // L2T_TESTS_UNIT_FIXTURES_H_
