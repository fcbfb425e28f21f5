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

#ifndef L2T_NUMCORE_ADAM_H_
#define L2T_NUMCORE_ADAM_H_

#include <cstdint>
#include <vector>

#include "l2t/numcore/tensor.h"

namespace l2t {

struct AdamOptions {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected adaptive-moment optimizer over a fixed parameter set. The
// parameters are borrowed and must outlive the optimizer.
class Adam {
 public:
  Adam() = default;
  Adam(std::vector<Tensor*> params, AdamOptions options);

  // Applies one update from the accumulated gradients. Throws ContractError
  // if any parameter has no gradient buffer.
  void Step();
  // Zeroes every parameter's gradient.
  void ZeroGrad();

  std::int64_t step_count() const { return step_count_; }
  const AdamOptions& options() const { return options_; }
  void set_learning_rate(double lr) { options_.learning_rate = lr; }
  const std::vector<Tensor>& first_moments() const { return m_; }
  const std::vector<Tensor>& second_moments() const { return v_; }

  // Rebinds to a new parameter set of identical shapes (used after copying
  // the owning agent).
  void Rebind(std::vector<Tensor*> params);

 private:
  std::vector<Tensor*> params_;
  AdamOptions options_;
  std::int64_t step_count_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

}  // namespace l2t

#endif  // L2T_NUMCORE_ADAM_H_
