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

#ifndef L2T_NUMCORE_POLICY_H_
#define L2T_NUMCORE_POLICY_H_

#include <random>
#include <vector>

#include "l2t/numcore/gaussian.h"
#include "l2t/numcore/mlp.h"

namespace l2t {

struct HeadVars {
  Var mean;
  Var log_std;
};

// Tanh-squashed diagonal Gaussian policy. The network emits
// [mean, log_std] per row; log_std is clamped to [kLogStdMin, kLogStdMax] in
// the forward pass, so every produced head respects the clamp. Actions are
// in the normalized box (-1, 1)^d.
class GaussianPolicy {
 public:
  GaussianPolicy() = default;
  GaussianPolicy(int input_dim, int action_dim, const std::vector<int>& hidden,
                 Activation activation, std::mt19937_64& rng);

  int input_dim() const { return net_.input_dim(); }
  int action_dim() const { return action_dim_; }

  DiagGaussianHead Distribution(const Matrix& input) const;
  HeadVars Distribution(Tape& tape, const Var& input, bool trainable = true);

  // tanh(mean) per row.
  Matrix DeterministicAction(const Matrix& input) const;
  // One squashed sample per row; noise drawn from `rng`.
  SquashedSample Sample(const Matrix& input, std::mt19937_64& rng) const;

  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }

 private:
  Mlp net_;
  int action_dim_ = 0;
};

Matrix StandardNormal(int rows, int cols, std::mt19937_64& rng);

}  // namespace l2t

#endif  // L2T_NUMCORE_POLICY_H_
