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

#include "l2t/envs/env.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

constexpr int kSubsteps = 2;

std::atomic<std::uint64_t> g_env_steps{0};

// Cartpole constants follow the classic control formulation.
constexpr double kCartGravity = 9.8;
constexpr double kCartMass = 1.0;
constexpr double kPoleMass = 0.1;
constexpr double kPoleHalfLength = 0.5;
constexpr double kForceScale = 10.0;
constexpr double kCartLimit = 2.4;
constexpr double kPoleLimit = 12.0 * std::numbers::pi / 180.0;

constexpr double kPointDamping = 0.5;

Vector Derivative(EnvName name, const Vector& s, const Vector& u) {
  Vector ds(s.size());
  switch (name) {
    case EnvName::kPendulum:
      ds[0] = s[1];
      ds[1] = kPendulumGravityTerm * std::sin(s[0]) +
              kPendulumControlGain * u[0];
      break;
    case EnvName::kCartpoleContinuous: {
      const double total = kCartMass + kPoleMass;
      const double pml = kPoleMass * kPoleHalfLength;
      const double sin_t = std::sin(s[2]), cos_t = std::cos(s[2]);
      const double force = kForceScale * u[0];
      const double temp = (force + pml * s[3] * s[3] * sin_t) / total;
      const double theta_acc =
          (kCartGravity * sin_t - cos_t * temp) /
          (kPoleHalfLength *
           (4.0 / 3.0 - kPoleMass * cos_t * cos_t / total));
      ds[0] = s[1];
      ds[1] = temp - pml * theta_acc * cos_t / total;
      ds[2] = s[3];
      ds[3] = theta_acc;
      break;
    }
    case EnvName::kPointmass:
      ds[0] = s[2];
      ds[1] = s[3];
      ds[2] = u[0] - kPointDamping * s[2];
      ds[3] = u[1] - kPointDamping * s[3];
      break;
  }
  return ds;
}

Vector Rk4(EnvName name, const Vector& s, const Vector& u, double h) {
  const Vector k1 = Derivative(name, s, u);
  const Vector k2 = Derivative(name, s + 0.5 * h * k1, u);
  const Vector k3 = Derivative(name, s + 0.5 * h * k2, u);
  const Vector k4 = Derivative(name, s + h * k3, u);
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double Reward(EnvName name, const Vector& s, const Vector& u) {
  switch (name) {
    case EnvName::kPendulum:
      return -(s[0] * s[0] + 0.1 * s[1] * s[1] + 0.001 * u[0] * u[0]);
    case EnvName::kCartpoleContinuous:
      return 1.0;
    case EnvName::kPointmass:
      return -(s.head<2>().squaredNorm() + 0.1 * s.tail<2>().squaredNorm() +
               0.01 * u.squaredNorm());
  }
  return 0.0;
}

}  // namespace

std::string_view EnvNameString(EnvName name) {
  switch (name) {
    case EnvName::kPendulum:
      return "pendulum";
    case EnvName::kCartpoleContinuous:
      return "cartpole_continuous";
    case EnvName::kPointmass:
      return "pointmass";
  }
  return "unknown";
}

EnvName ParseEnvName(std::string_view name) {
  if (name == "pendulum") return EnvName::kPendulum;
  if (name == "cartpole_continuous") return EnvName::kCartpoleContinuous;
  if (name == "pointmass") return EnvName::kPointmass;
  throw std::invalid_argument("unknown env name '" + std::string(name) + "'");
}

EnvSpec MakeEnvSpec(EnvName name) {
  EnvSpec spec;
  spec.name = name;
  spec.dt = 0.05;
  spec.gamma = 0.99;
  switch (name) {
    case EnvName::kPendulum:
      spec.state_dim = 2;
      spec.action_dim = 1;
      spec.action_low = -2.0;
      spec.action_high = 2.0;
      spec.horizon = 200;
      break;
    case EnvName::kCartpoleContinuous:
      spec.state_dim = 4;
      spec.action_dim = 1;
      spec.horizon = 500;
      break;
    case EnvName::kPointmass:
      spec.state_dim = 4;
      spec.action_dim = 2;
      spec.horizon = 200;
      break;
  }
  spec.obs_dim = spec.state_dim;
  return spec;
}

Vector ToEnvAction(const EnvSpec& spec, const Vector& normalized) {
  const double center = 0.5 * (spec.action_high + spec.action_low);
  const double half = 0.5 * (spec.action_high - spec.action_low);
  return ((center + half * normalized.array())
              .cwiseMax(spec.action_low)
              .cwiseMin(spec.action_high))
      .matrix();
}

Matrix NormalizeActions(const EnvSpec& spec, const Matrix& env_actions) {
  const double center = 0.5 * (spec.action_high + spec.action_low);
  const double half = 0.5 * (spec.action_high - spec.action_low);
  return ((env_actions.array() - center) / half).matrix();
}

std::uint64_t GlobalEnvStepCount() { return g_env_steps.load(); }

double WrapAngle(double theta) {
  double w = std::fmod(theta + std::numbers::pi, 2.0 * std::numbers::pi);
  if (w <= 0.0) w += 2.0 * std::numbers::pi;
  return w - std::numbers::pi;
}

double PendulumEnergy(const Vector& s) {
  return 0.5 * s[1] * s[1] + kPendulumGravityTerm * (1.0 + std::cos(s[0]));
}

EnvState Reset(const EnvSpec& spec, std::mt19937_64& rng) {
  EnvState state;
  state.s = Vector::Zero(spec.state_dim);
  switch (spec.name) {
    case EnvName::kPendulum: {
      std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                   std::numbers::pi);
      std::uniform_real_distribution<double> speed(-1.0, 1.0);
      state.s[0] = WrapAngle(angle(rng));
      state.s[1] = speed(rng);
      break;
    }
    case EnvName::kCartpoleContinuous: {
      std::uniform_real_distribution<double> small(-0.05, 0.05);
      for (int i = 0; i < 4; ++i) state.s[i] = small(rng);
      break;
    }
    case EnvName::kPointmass: {
      std::uniform_real_distribution<double> pos(-1.0, 1.0);
      state.s[0] = pos(rng);
      state.s[1] = pos(rng);
      break;
    }
  }
  return state;
}

EnvState Reset(const EnvSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return Reset(spec, rng);
}

StepResult Step(const EnvSpec& spec, const EnvState& state,
                const Vector& action) {
  if (state.done) throw ContractError("step called on a finished episode");
  if (action.size() != spec.action_dim) {
    throw DimensionError("action has " + std::to_string(action.size()) +
                         " entries, expected " +
                         std::to_string(spec.action_dim));
  }
  g_env_steps.fetch_add(1, std::memory_order_relaxed);
  const Vector u = action.cwiseMax(spec.action_low).cwiseMin(spec.action_high);
  StepResult out;
  out.reward = Reward(spec.name, state.s, u);
  Vector s = state.s;
  const double h = spec.dt / kSubsteps;
  for (int i = 0; i < kSubsteps; ++i) s = Rk4(spec.name, s, u, h);

  bool failed = false;
  switch (spec.name) {
    case EnvName::kPendulum:
      s[0] = WrapAngle(s[0]);
      s[1] = std::clamp(s[1], -kPendulumMaxSpeed, kPendulumMaxSpeed);
      break;
    case EnvName::kCartpoleContinuous:
      failed = std::abs(s[0]) > kCartLimit || std::abs(s[2]) > kPoleLimit;
      break;
    case EnvName::kPointmass:
      break;
  }
  out.next.s = std::move(s);
  out.next.t = state.t + 1;
  out.next.terminal = failed;
  out.next.done = failed || out.next.t >= spec.horizon;
  return out;
}

}  // namespace l2t
