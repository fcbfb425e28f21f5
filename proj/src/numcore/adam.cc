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

#include "l2t/numcore/adam.h"

#include <cmath>

#include "l2t/numcore/errors.h"

namespace l2t {

Adam::Adam(std::vector<Tensor*> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  for (const Tensor* p : params_) {
    m_.emplace_back(p->shape());
    v_.emplace_back(p->shape());
  }
}

void Adam::Rebind(std::vector<Tensor*> params) {
  if (params.size() != params_.size()) {
    throw DimensionError("Adam::Rebind: parameter count changed");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i]->shape() != m_[i].shape()) {
      throw DimensionError("Adam::Rebind: parameter shape changed");
    }
  }
  params_ = std::move(params);
}

void Adam::Step() {
  for (const Tensor* p : params_) {
    if (!p->has_grad()) {
      throw ContractError("Adam::Step called on a parameter without gradient");
    }
  }
  ++step_count_;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double t = static_cast<double>(step_count_);
  const double bias1 = 1.0 - std::pow(b1, t);
  const double bias2 = 1.0 - std::pow(b2, t);
  const double lr = options_.learning_rate;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    auto data = params_[k]->data();
    auto grad = std::as_const(*params_[k]).grad();
    auto m = m_[k].data();
    auto v = v_[k].data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double g = grad[i];
      m[i] = b1 * m[i] + (1.0 - b1) * g;
      v[i] = b2 * v[i] + (1.0 - b2) * g * g;
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      data[i] -= lr * m_hat / (std::sqrt(v_hat) + options_.epsilon);
    }
  }
}

void Adam::ZeroGrad() {
  for (Tensor* p : params_) p->ZeroGrad();
}

}  // namespace l2t
