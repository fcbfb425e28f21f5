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

#include "l2t/envs/noise.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace l2t {

Vector Observe(const Vector& s, double alpha, std::mt19937_64& rng) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("noise alpha must be >= 0");
  }
  if (alpha == 0.0) return s;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector o(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double bound = alpha * std::abs(s[i]);
    double oi = s[i] + bound * unit(rng);
    // Rounding in the addition can overshoot the box by an ulp.
    while (std::abs(oi - s[i]) > bound) oi = std::nextafter(oi, s[i]);
    o[i] = oi;
  }
  return o;
}

bool WithinNoiseBox(const Vector& s, const Vector& o, double alpha) {
  if (s.size() != o.size()) return false;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!(std::abs(o[i] - s[i]) <= alpha * std::abs(s[i]))) return false;
  }
  return true;
}

std::string_view CurriculumShapeString(CurriculumShape shape) {
  return shape == CurriculumShape::kLinear ? "linear" : "constant";
}

CurriculumShape ParseCurriculumShape(std::string_view name) {
  if (name == "linear") return CurriculumShape::kLinear;
  if (name == "constant") return CurriculumShape::kConstant;
  throw std::invalid_argument("unknown curriculum shape '" +
                              std::string(name) + "'");
}

double CurriculumAlpha(const CurriculumSchedule& schedule, std::int64_t k) {
  if (schedule.shape == CurriculumShape::kConstant ||
      schedule.ramp_steps <= 0 || k >= schedule.ramp_steps) {
    return schedule.alpha_target;
  }
  if (k <= 0) return 0.0;
  return schedule.alpha_target * (static_cast<double>(k) /
                                  static_cast<double>(schedule.ramp_steps));
}

}  // namespace l2t
