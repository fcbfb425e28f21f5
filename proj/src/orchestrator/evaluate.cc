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

#include "l2t/orchestrator/evaluate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "l2t/envs/noise.h"
#include "l2t/envs/oracle.h"
#include "l2t/orchestrator/rng_streams.h"

namespace l2t {

EvalStats EvaluateController(const EnvSpec& spec, const Controller& controller,
                             double alpha, int episodes, std::uint64_t seed) {
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  EvalStats stats;
  std::int64_t total_steps = 0;
  double total_reward = 0.0;
  for (int j = 0; j < episodes; ++j) {
    EnvState state = Reset(spec, StreamSeed(seed, "eval_reset", j));
    std::mt19937_64 noise_rng = MakeStream(seed, "eval_noise", j);
    double ret = 0.0;
    while (!state.done) {
      const Vector view =
          alpha > 0.0 ? Observe(state.s, alpha, noise_rng) : state.s;
      StepResult result = Step(spec, state, controller(view));
      ret += result.reward;
      state = std::move(result.next);
    }
    stats.returns.push_back(ret);
    stats.length_mean += state.t;
    total_steps += state.t;
    total_reward += ret;
  }
  const double n = episodes;
  stats.length_mean /= n;
  for (double r : stats.returns) stats.return_mean += r;
  stats.return_mean /= n;
  double var = 0.0;
  for (double r : stats.returns) {
    var += (r - stats.return_mean) * (r - stats.return_mean);
  }
  stats.return_std = std::sqrt(var / n);
  stats.average_reward =
      total_steps > 0 ? total_reward / static_cast<double>(total_steps) : 0.0;
  return stats;
}

EvalStats EvaluatePolicy(const EnvSpec& spec, const GaussianPolicy& policy,
                         double alpha, int episodes, std::uint64_t seed) {
  Controller controller = [&](const Vector& view) {
    const Matrix row = view.transpose();
    return ToEnvAction(spec, policy.DeterministicAction(row).row(0).transpose());
  };
  return EvaluateController(spec, controller, alpha, episodes, seed);
}

EvalStats EvaluateRandomPolicy(const EnvSpec& spec, int episodes,
                               std::uint64_t seed) {
  std::mt19937_64 rng = MakeStream(seed, "eval_random_actions");
  std::uniform_real_distribution<double> u(spec.action_low, spec.action_high);
  Controller controller = [&](const Vector&) {
    Vector a(spec.action_dim);
    for (int i = 0; i < spec.action_dim; ++i) a[i] = u(rng);
    return a;
  };
  return EvaluateController(spec, controller, 0.0, episodes, seed);
}

EvalStats EvaluateOracle(const EnvSpec& spec, int episodes,
                         std::uint64_t seed) {
  Controller controller = [&](const Vector& s) {
    return ScriptedOracle(spec, s);
  };
  return EvaluateController(spec, controller, 0.0, episodes, seed);
}

bool AblationVerdict(std::vector<std::pair<double, double>> series) {
  if (series.size() < 2) {
    throw std::invalid_argument("ablation verdict needs at least two points");
  }
  std::sort(series.begin(), series.end());
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].second > series[i - 1].second) return false;
  }
  return true;
}

}  // namespace l2t
