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

#ifndef L2T_NUMCORE_TENSOR_H_
#define L2T_NUMCORE_TENSOR_H_

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace l2t {

// Row-major so that a Tensor's flat buffer maps onto a Matrix without copies.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

// Dense rank-1 or rank-2 array of doubles with an optional gradient buffer.
// Rank-1 tensors view as a single row.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, std::vector<double> data);

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  std::size_t size() const { return data_.size(); }
  int rows() const;
  int cols() const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool has_grad() const { return !grad_.empty(); }
  // Allocates a zero gradient if none exists.
  std::span<double> grad();
  std::span<const double> grad() const { return grad_; }
  void ZeroGrad();
  void ClearGrad() { grad_.clear(); }

  MatrixMap AsMatrix();
  ConstMatrixMap AsMatrix() const;
  MatrixMap GradMatrix();

  bool AllFinite() const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  std::vector<int> shape_;
  std::vector<double> data_;
  std::vector<double> grad_;
};

std::string ShapeString(const std::vector<int>& shape);

}  // namespace l2t

#endif  // L2T_NUMCORE_TENSOR_H_
