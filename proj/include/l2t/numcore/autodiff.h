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

#ifndef L2T_NUMCORE_AUTODIFF_H_
#define L2T_NUMCORE_AUTODIFF_H_

#include <deque>
#include <functional>
#include <vector>

#include "l2t/numcore/tensor.h"

namespace l2t {

class Tape;

// Handle to a node recorded on a Tape. Cheap to copy; valid while the tape
// lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  // Gradient of the last Backward() call with respect to this node. Empty if
  // the node did not participate.
  const Matrix& grad() const;
  int rows() const { return static_cast<int>(value().rows()); }
  int cols() const { return static_cast<int>(value().cols()); }
  bool requires_grad() const;
  // Convenience for 1x1 nodes.
  double scalar() const { return value()(0, 0); }

  Tape* tape() const { return tape_; }
  int id() const { return id_; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

// Reverse-mode recording of matrix operations. Nodes are appended in
// evaluation order, so reverse insertion order is a valid topological order
// for the backward sweep.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, int self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf that never receives a gradient.
  Var Constant(Matrix value);
  // Leaf that receives a gradient (readable via Var::grad) but is not tied to
  // a parameter tensor.
  Var Input(Matrix value);
  // Leaf bound to `param`. Backward() adds this leaf's gradient into
  // param.grad(). With trainable = false the leaf acts as a constant, which
  // still lets gradients flow *through* the network to its inputs.
  Var Parameter(Tensor& param, bool trainable = true);

  // Accumulates d(loss)/d(param) into every trainable parameter reachable from
  // `loss`. Throws ContractError unless loss is 1x1.
  void Backward(const Var& loss);

  // Low-level hooks for operation implementations.
  Var Record(Matrix value, bool requires_grad, BackwardFn fn);
  const Matrix& ValueOf(int id) const { return nodes_[id].value; }
  const Matrix& GradOf(int id) const { return nodes_[id].grad; }
  bool RequiresGrad(int id) const { return nodes_[id].requires_grad; }
  // Returns the gradient buffer of `id`, zero-initialized on first access.
  Matrix& MutableGrad(int id);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    BackwardFn backward;
    Tensor* param = nullptr;
  };

  std::deque<Node> nodes_;
};

// Elementwise tanh with |error| <= ~4e-16, used by both the tape and the
// tape-free network evaluation so the two paths agree bit-for-bit.
Matrix VectorizedTanh(const Matrix& x);

// Elementwise arithmetic; operands must share a shape.
Var Add(const Var& a, const Var& b);
Var Sub(const Var& a, const Var& b);
Var Mul(const Var& a, const Var& b);
Var Minimum(const Var& a, const Var& b);
Var Scale(const Var& a, double c);
Var AddScalar(const Var& a, double c);

Var Tanh(const Var& a);
Var Relu(const Var& a);
Var Exp(const Var& a);
Var Log(const Var& a);
Var Square(const Var& a);
// d|x|/dx is taken as 0 at x = 0.
Var Abs(const Var& a);
// d sqrt(x)/dx is taken as 0 at x = 0 so that zero-distance losses have a
// zero (sub)gradient instead of Inf.
Var Sqrt(const Var& a);
Var Softplus(const Var& a);
// Hard clamp; zero gradient outside [lo, hi].
Var Clamp(const Var& a, double lo, double hi);

// x (B x in) * w^T (in x out) + b (1 x out, broadcast over rows).
Var Linear(const Var& x, const Var& w, const Var& b);
Var Linear(const Var& x, const Var& w);

Var ConcatCols(const Var& a, const Var& b);
Var SliceCols(const Var& a, int start, int count);
// B x n -> B x 1.
Var RowSum(const Var& a);
// -> 1 x 1.
Var SumAll(const Var& a);
Var MeanAll(const Var& a);

}  // namespace l2t

#endif  // L2T_NUMCORE_AUTODIFF_H_
