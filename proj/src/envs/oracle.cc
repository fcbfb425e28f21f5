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

#include "l2t/envs/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace l2t {
namespace {

constexpr double kBalanceRegion = 0.6;
constexpr double kBalanceKp = 10.0;
constexpr double kBalanceKd = 2.0;
constexpr double kEnergyDrain = 0.5;

constexpr double kPointKp = 2.0;
constexpr double kPointKd = 2.0;

}  // namespace

Vector ScriptedOracle(const EnvSpec& spec, const Vector& s) {
  Vector u(spec.action_dim);
  switch (spec.name) {
    case EnvName::kPendulum: {
      const double theta = s[0], omega = s[1];
      // Zero at upright rest, -30 hanging at rest.
      const double energy = 0.5 * omega * omega +
                            kPendulumGravityTerm * (std::cos(theta) - 1.0);
      double torque;
      if (std::abs(theta) < kBalanceRegion) {
        torque = -(kBalanceKp * theta + kBalanceKd * omega);
      } else if (energy < 0.0) {
        torque = omega >= 0.0 ? spec.action_high : spec.action_low;
      } else {
        torque = -kEnergyDrain * energy * omega;
      }
      u[0] = std::clamp(torque, spec.action_low, spec.action_high);
      return u;
    }
    case EnvName::kPointmass:
      for (int i = 0; i < 2; ++i) {
        u[i] = std::clamp(-(kPointKp * s[i] + kPointKd * s[i + 2]),
                          spec.action_low, spec.action_high);
      }
      return u;
    case EnvName::kCartpoleContinuous:
      break;
  }
  throw std::invalid_argument("no scripted oracle for " +
                              std::string(EnvNameString(spec.name)));
}

}  // namespace l2t
