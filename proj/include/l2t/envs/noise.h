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

#ifndef L2T_ENVS_NOISE_H_
#define L2T_ENVS_NOISE_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "l2t/envs/env.h"

namespace l2t {

// Multiplicative-support uniform observation noise:
//   o_i = s_i + alpha * eps_i,  eps_i ~ U[-|s_i|, |s_i|].
struct NoiseModel {
  double alpha = 0.0;
  std::uint64_t rng_seed = 0;
};

// Guarantees |o_i - s_i| <= alpha * |s_i| in floating point; alpha == 0
// returns s unchanged. Throws std::invalid_argument for alpha < 0.
Vector Observe(const Vector& s, double alpha, std::mt19937_64& rng);

// True when every coordinate satisfies |o_i - s_i| <= alpha * |s_i|.
bool WithinNoiseBox(const Vector& s, const Vector& o, double alpha);

enum class CurriculumShape { kLinear, kConstant };

std::string_view CurriculumShapeString(CurriculumShape shape);
CurriculumShape ParseCurriculumShape(std::string_view name);

// Noise-scale schedule for the student's view of the data.
struct CurriculumSchedule {
  double alpha_target = 0.0;
  std::int64_t ramp_steps = 0;
  CurriculumShape shape = CurriculumShape::kLinear;
};

// linear: alpha_target * min(1, k / ramp_steps); constant: alpha_target.
// A linear schedule with ramp_steps == 0 is constant.
double CurriculumAlpha(const CurriculumSchedule& schedule, std::int64_t k);

}  // namespace l2t

#endif  // L2T_ENVS_NOISE_H_
