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

#include "l2t/numcore/tensor.h"

#include <algorithm>
#include <cmath>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

std::size_t Product(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d <= 0) throw DimensionError("tensor dims must be positive, got " +
                                     ShapeString(shape));
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

}  // namespace

std::string ShapeString(const std::vector<int>& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

Tensor::Tensor(std::vector<int> shape)
    : shape_(std::move(shape)), data_(Product(shape_), 0.0) {
  if (shape_.empty() || shape_.size() > 2) {
    throw DimensionError("tensor rank must be 1 or 2");
  }
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty() || shape_.size() > 2) {
    throw DimensionError("tensor rank must be 1 or 2");
  }
  if (data_.size() != Product(shape_)) {
    throw DimensionError("data length " + std::to_string(data_.size()) +
                         " does not match shape " + ShapeString(shape_));
  }
}

int Tensor::rows() const { return rank() == 2 ? shape_[0] : 1; }
int Tensor::cols() const { return rank() == 2 ? shape_[1] : shape_[0]; }

std::span<double> Tensor::grad() {
  if (grad_.empty()) grad_.assign(data_.size(), 0.0);
  return grad_;
}

void Tensor::ZeroGrad() { grad_.assign(data_.size(), 0.0); }

MatrixMap Tensor::AsMatrix() { return MatrixMap(data_.data(), rows(), cols()); }

ConstMatrixMap Tensor::AsMatrix() const {
  return ConstMatrixMap(data_.data(), rows(), cols());
}

MatrixMap Tensor::GradMatrix() {
  grad();
  return MatrixMap(grad_.data(), rows(), cols());
}

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace l2t
