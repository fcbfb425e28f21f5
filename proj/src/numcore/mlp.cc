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

#include "l2t/numcore/mlp.h"

#include <cmath>

#include "l2t/numcore/errors.h"

namespace l2t {

Mlp::Mlp(std::vector<int> layer_dims, Activation activation)
    : layer_dims_(std::move(layer_dims)), activation_(activation) {
  if (layer_dims_.size() < 2) {
    throw DimensionError("an Mlp needs at least input and output dims");
  }
  for (std::size_t i = 0; i + 1 < layer_dims_.size(); ++i) {
    weights_.emplace_back(std::vector<int>{layer_dims_[i + 1], layer_dims_[i]});
    biases_.emplace_back(std::vector<int>{layer_dims_[i + 1]});
  }
}

Mlp::Mlp(std::vector<int> layer_dims, Activation activation,
         std::mt19937_64& rng)
    : Mlp(std::move(layer_dims), activation) {
  for (int i = 0; i < num_layers(); ++i) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer_dims_[i]));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : weights_[i].data()) v = dist(rng);
    for (double& v : biases_[i].data()) v = dist(rng);
  }
}

void Mlp::CheckInput(int cols) const {
  if (cols != input_dim()) {
    throw DimensionError("Mlp input width " + std::to_string(cols) +
                         " != " + std::to_string(input_dim()));
  }
}

Var Mlp::Forward(Tape& tape, const Var& input, bool trainable) {
  CheckInput(input.cols());
  Var h = input;
  for (int i = 0; i < num_layers(); ++i) {
    h = Linear(h, tape.Parameter(weights_[i], trainable),
               tape.Parameter(biases_[i], trainable));
    if (i + 1 < num_layers()) {
      h = activation_ == Activation::kTanh ? Tanh(h) : Relu(h);
    }
  }
  return h;
}

Matrix Mlp::Evaluate(const Matrix& input) const {
  CheckInput(static_cast<int>(input.cols()));
  Matrix h = input;
  for (int i = 0; i < num_layers(); ++i) {
    Matrix next = h * weights_[i].AsMatrix().transpose();
    next.rowwise() += biases_[i].AsMatrix().row(0);
    if (i + 1 < num_layers()) {
      if (activation_ == Activation::kTanh) {
        next = VectorizedTanh(next);
      } else {
        next = next.cwiseMax(0.0);
      }
    }
    h = std::move(next);
  }
  return h;
}

std::vector<Tensor*> Mlp::Parameters() {
  std::vector<Tensor*> out;
  for (int i = 0; i < num_layers(); ++i) {
    out.push_back(&weights_[i]);
    out.push_back(&biases_[i]);
  }
  return out;
}

std::vector<std::pair<std::string, const Tensor*>> Mlp::NamedParameters(
    const std::string& prefix) const {
  std::vector<std::pair<std::string, const Tensor*>> out;
  for (int i = 0; i < num_layers(); ++i) {
    out.emplace_back(prefix + "l" + std::to_string(i) + ".w", &weights_[i]);
    out.emplace_back(prefix + "l" + std::to_string(i) + ".b", &biases_[i]);
  }
  return out;
}

std::size_t Mlp::ParameterCount() const {
  std::size_t n = 0;
  for (int i = 0; i < num_layers(); ++i) {
    n += weights_[i].size() + biases_[i].size();
  }
  return n;
}

void Mlp::BlendFrom(const Mlp& source, double tau) {
  if (source.layer_dims_ != layer_dims_) {
    throw DimensionError("BlendFrom: architectures differ");
  }
  for (int i = 0; i < num_layers(); ++i) {
    weights_[i].AsMatrix() = tau * source.weights_[i].AsMatrix() +
                             (1.0 - tau) * weights_[i].AsMatrix();
    biases_[i].AsMatrix() = tau * source.biases_[i].AsMatrix() +
                            (1.0 - tau) * biases_[i].AsMatrix();
  }
}

}  // namespace l2t
