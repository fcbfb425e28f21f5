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

#ifndef L2T_ENVS_ORACLE_H_
#define L2T_ENVS_ORACLE_H_

#include "l2t/envs/env.h"

namespace l2t {

// Hand-designed near-optimal controller used as the competence yardstick and
// as the demonstration generator.
//   pendulum: bang-bang energy pumping, energy removal when over-energized,
//             PD balance once |theta| < 0.6.
//   pointmass: saturated PD toward the goal.
// Throws std::invalid_argument for cartpole.
Vector ScriptedOracle(const EnvSpec& spec, const Vector& s);

}  // namespace l2t

#endif  // L2T_ENVS_ORACLE_H_
