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

#ifndef L2T_NUMCORE_MLP_H_
#define L2T_NUMCORE_MLP_H_

#include <random>
#include <string>
#include <vector>

#include "l2t/numcore/autodiff.h"
#include "l2t/numcore/tensor.h"

namespace l2t {

enum class Activation { kTanh, kRelu };

// Fully connected network with a shared hidden activation and identity
// output. Layer i maps layer_dims[i] -> layer_dims[i + 1]; its weight has
// shape (layer_dims[i + 1], layer_dims[i]).
class Mlp {
 public:
  Mlp() = default;
  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) init for weights and biases.
  Mlp(std::vector<int> layer_dims, Activation activation, std::mt19937_64& rng);
  // All-zero parameters.
  Mlp(std::vector<int> layer_dims, Activation activation);

  const std::vector<int>& layer_dims() const { return layer_dims_; }
  int input_dim() const { return layer_dims_.front(); }
  int output_dim() const { return layer_dims_.back(); }
  int num_layers() const { return static_cast<int>(weights_.size()); }
  Activation activation() const { return activation_; }

  Tensor& weight(int layer) { return weights_[layer]; }
  const Tensor& weight(int layer) const { return weights_[layer]; }
  Tensor& bias(int layer) { return biases_[layer]; }
  const Tensor& bias(int layer) const { return biases_[layer]; }

  // Records the forward pass on `tape`. `input` is B x input_dim.
  Var Forward(Tape& tape, const Var& input, bool trainable = true);
  // Tape-free evaluation for acting and targets.
  Matrix Evaluate(const Matrix& input) const;

  std::vector<Tensor*> Parameters();
  // Named as "<prefix>l<i>.w" / "<prefix>l<i>.b".
  std::vector<std::pair<std::string, const Tensor*>> NamedParameters(
      const std::string& prefix) const;
  std::size_t ParameterCount() const;

  // target <- tau * source + (1 - tau) * target, elementwise.
  void BlendFrom(const Mlp& source, double tau);

 private:
  void CheckInput(int cols) const;

  std::vector<int> layer_dims_;
  Activation activation_ = Activation::kTanh;
  std::vector<Tensor> weights_;
  std::vector<Tensor> biases_;
};

}  // namespace l2t

#endif  // L2T_NUMCORE_MLP_H_
