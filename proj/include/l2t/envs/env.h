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

#ifndef L2T_ENVS_ENV_H_
#define L2T_ENVS_ENV_H_

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "l2t/numcore/tensor.h"

namespace l2t {

using Vector = Eigen::VectorXd;

enum class EnvName { kPendulum, kCartpoleContinuous, kPointmass };

std::string_view EnvNameString(EnvName name);
// Throws std::invalid_argument for unknown names.
EnvName ParseEnvName(std::string_view name);

// Static description of a built-in environment. Observations live in the
// same space as states (noise is applied on top of the state).
struct EnvSpec {
  EnvName name = EnvName::kPendulum;
  int state_dim = 0;
  int obs_dim = 0;
  int action_dim = 0;
  double action_low = -1.0;
  double action_high = 1.0;
  double dt = 0.05;
  int horizon = 200;
  double gamma = 0.99;
};

EnvSpec MakeEnvSpec(EnvName name);

struct EnvState {
  Vector s;
  int t = 0;
  // Episode over: time limit reached or failure.
  bool done = false;
  // Failure only (absorbing state); excludes time-limit truncation.
  bool terminal = false;
};

struct StepResult {
  EnvState next;
  double reward = 0.0;
};

// Pendulum: s = [theta, theta_dot], theta = 0 upright, wrapped to (-pi, pi].
//   theta_ddot = 15 sin(theta) + 3 u, u in [-2, 2], |theta_dot| <= 8.
//   reward = -(theta^2 + 0.1 theta_dot^2 + 0.001 u^2) on the pre-step state.
//   reset: theta ~ U[-pi, pi], theta_dot ~ U[-1, 1].
// Cartpole (continuous): s = [x, x_dot, theta, theta_dot], force = 10 u,
//   u in [-1, 1]; reward 1 per surviving step; fails when |x| > 2.4 or
//   |theta| > 12 degrees. reset: every entry ~ U[-0.05, 0.05].
// Pointmass: s = [px, py, vx, vy], goal at the origin, accel = u - 0.5 v,
//   u in [-1, 1]^2; reward = -(|p|^2 + 0.1 |v|^2 + 0.01 |u|^2).
//   reset: p ~ U[-1, 1]^2, v = 0.
EnvState Reset(const EnvSpec& spec, std::mt19937_64& rng);
EnvState Reset(const EnvSpec& spec, std::uint64_t seed);

// Pure function of its arguments. Actions outside the bounds are clamped.
// Throws ContractError when `state.done`.
StepResult Step(const EnvSpec& spec, const EnvState& state,
                const Vector& action);

// Maps a normalized action in [-1, 1]^d onto [action_low, action_high]^d
// and back.
Vector ToEnvAction(const EnvSpec& spec, const Vector& normalized);
Matrix NormalizeActions(const EnvSpec& spec, const Matrix& env_actions);

// Process-wide count of Step() calls, for interaction accounting.
std::uint64_t GlobalEnvStepCount();

// theta wrapped into (-pi, pi].
double WrapAngle(double theta);

// Pendulum mechanical energy, zero when hanging at rest:
// 0.5 theta_dot^2 + 15 (1 + cos theta).
double PendulumEnergy(const Vector& s);

inline constexpr double kPendulumGravityTerm = 15.0;  // 3 g / (2 l)
inline constexpr double kPendulumControlGain = 3.0;   // 3 / (m l^2)
inline constexpr double kPendulumMaxSpeed = 8.0;

}  // namespace l2t

#endif  // L2T_ENVS_ENV_H_
