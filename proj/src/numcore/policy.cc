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

#include "l2t/numcore/policy.h"

namespace l2t {

GaussianPolicy::GaussianPolicy(int input_dim, int action_dim,
                               const std::vector<int>& hidden,
                               Activation activation, std::mt19937_64& rng)
    : action_dim_(action_dim) {
  std::vector<int> dims{input_dim};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(2 * action_dim);
  net_ = Mlp(dims, activation, rng);
}

DiagGaussianHead GaussianPolicy::Distribution(const Matrix& input) const {
  Matrix out = net_.Evaluate(input);
  DiagGaussianHead head;
  head.mean = out.leftCols(action_dim_);
  head.log_std = out.rightCols(action_dim_).cwiseMax(kLogStdMin).cwiseMin(
      kLogStdMax);
  return head;
}

HeadVars GaussianPolicy::Distribution(Tape& tape, const Var& input,
                                      bool trainable) {
  Var out = net_.Forward(tape, input, trainable);
  return {SliceCols(out, 0, action_dim_),
          Clamp(SliceCols(out, action_dim_, action_dim_), kLogStdMin,
                kLogStdMax)};
}

Matrix GaussianPolicy::DeterministicAction(const Matrix& input) const {
  return VectorizedTanh(net_.Evaluate(input).leftCols(action_dim_));
}

SquashedSample GaussianPolicy::Sample(const Matrix& input,
                                      std::mt19937_64& rng) const {
  const DiagGaussianHead head = Distribution(input);
  return SampleSquashed(head,
                        StandardNormal(static_cast<int>(input.rows()),
                                       action_dim_, rng));
}

Matrix StandardNormal(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

}  // namespace l2t
