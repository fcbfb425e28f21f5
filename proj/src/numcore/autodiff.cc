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

#include "l2t/numcore/autodiff.h"

#include <cmath>
#include <string>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

Tape& SameTape(const Var& a, const Var& b) {
  if (a.tape() == nullptr || a.tape() != b.tape()) {
    throw ContractError("operands recorded on different tapes");
  }
  return *a.tape();
}

void CheckSameShape(const Var& a, const Var& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape (" +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ") vs (" +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

// Records an elementwise unary op whose local derivative is computed from
// the input and output values.
template <typename Fwd, typename Deriv>
Var Unary(const Var& a, Fwd fwd, Deriv deriv) {
  Tape& tape = *a.tape();
  const int ia = a.id();
  Matrix out = a.value().unaryExpr(fwd);
  return tape.Record(std::move(out), a.requires_grad(),
                     [ia, deriv](Tape& t, int self) {
                       const Matrix& x = t.ValueOf(ia);
                       const Matrix& y = t.ValueOf(self);
                       const Matrix& g = t.GradOf(self);
                       Matrix& ga = t.MutableGrad(ia);
                       for (Eigen::Index i = 0; i < x.size(); ++i) {
                         ga.data()[i] +=
                             g.data()[i] * deriv(x.data()[i], y.data()[i]);
                       }
                     });
}

}  // namespace

Matrix VectorizedTanh(const Matrix& x) {
  // tanh(x) = 1 - 2 / (exp(2x) + 1); Eigen vectorizes exp but not tanh for
  // doubles. Saturates correctly at both ends (exp -> 0 or inf).
  return (1.0 - 2.0 / ((2.0 * x.array()).exp() + 1.0)).matrix();
}

const Matrix& Var::value() const { return tape_->ValueOf(id_); }
const Matrix& Var::grad() const { return tape_->GradOf(id_); }
bool Var::requires_grad() const { return tape_->RequiresGrad(id_); }

Var Tape::Constant(Matrix value) {
  return Record(std::move(value), false, nullptr);
}

Var Tape::Input(Matrix value) { return Record(std::move(value), true, nullptr); }

Var Tape::Parameter(Tensor& param, bool trainable) {
  Var v = Record(Matrix(param.AsMatrix()), trainable, nullptr);
  if (trainable) nodes_[v.id_].param = &param;
  return v;
}

Var Tape::Record(Matrix value, bool requires_grad, BackwardFn fn) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  if (requires_grad) node.backward = std::move(fn);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Matrix& Tape::MutableGrad(int id) {
  Node& n = nodes_[id];
  if (n.grad.size() == 0) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::Backward(const Var& loss) {
  if (loss.tape_ != this) throw ContractError("loss not recorded on this tape");
  const Node& root = nodes_[loss.id_];
  if (root.value.rows() != 1 || root.value.cols() != 1) {
    throw ContractError("backward requires a scalar loss, got shape (" +
                        std::to_string(root.value.rows()) + "x" +
                        std::to_string(root.value.cols()) + ")");
  }
  for (Node& n : nodes_) n.grad.resize(0, 0);
  if (!root.requires_grad) return;
  MutableGrad(loss.id_)(0, 0) = 1.0;
  for (int i = loss.id_; i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.requires_grad || n.grad.size() == 0) continue;
    if (n.backward) {
      n.backward(*this, i);
    } else if (n.param != nullptr) {
      n.param->GradMatrix() += n.grad;
    }
  }
}

Var Add(const Var& a, const Var& b) {
  Tape& t = SameTape(a, b);
  CheckSameShape(a, b, "Add");
  const int ia = a.id(), ib = b.id();
  return t.Record(a.value() + b.value(),
                  a.requires_grad() || b.requires_grad(),
                  [ia, ib](Tape& t, int self) {
                    const Matrix& g = t.GradOf(self);
                    if (t.RequiresGrad(ia)) t.MutableGrad(ia) += g;
                    if (t.RequiresGrad(ib)) t.MutableGrad(ib) += g;
                  });
}

Var Sub(const Var& a, const Var& b) {
  Tape& t = SameTape(a, b);
  CheckSameShape(a, b, "Sub");
  const int ia = a.id(), ib = b.id();
  return t.Record(a.value() - b.value(),
                  a.requires_grad() || b.requires_grad(),
                  [ia, ib](Tape& t, int self) {
                    const Matrix& g = t.GradOf(self);
                    if (t.RequiresGrad(ia)) t.MutableGrad(ia) += g;
                    if (t.RequiresGrad(ib)) t.MutableGrad(ib) -= g;
                  });
}

Var Mul(const Var& a, const Var& b) {
  Tape& t = SameTape(a, b);
  CheckSameShape(a, b, "Mul");
  const int ia = a.id(), ib = b.id();
  return t.Record(a.value().cwiseProduct(b.value()),
                  a.requires_grad() || b.requires_grad(),
                  [ia, ib](Tape& t, int self) {
                    const Matrix& g = t.GradOf(self);
                    if (t.RequiresGrad(ia)) {
                      t.MutableGrad(ia) += g.cwiseProduct(t.ValueOf(ib));
                    }
                    if (t.RequiresGrad(ib)) {
                      t.MutableGrad(ib) += g.cwiseProduct(t.ValueOf(ia));
                    }
                  });
}

Var Minimum(const Var& a, const Var& b) {
  Tape& t = SameTape(a, b);
  CheckSameShape(a, b, "Minimum");
  const int ia = a.id(), ib = b.id();
  // Ties route the gradient to `a`.
  return t.Record(a.value().cwiseMin(b.value()),
                  a.requires_grad() || b.requires_grad(),
                  [ia, ib](Tape& t, int self) {
                    const Matrix& g = t.GradOf(self);
                    const Matrix& va = t.ValueOf(ia);
                    const Matrix& vb = t.ValueOf(ib);
                    for (Eigen::Index i = 0; i < g.size(); ++i) {
                      const bool pick_a = va.data()[i] <= vb.data()[i];
                      const int target = pick_a ? ia : ib;
                      if (t.RequiresGrad(target)) {
                        t.MutableGrad(target).data()[i] += g.data()[i];
                      }
                    }
                  });
}

Var Scale(const Var& a, double c) {
  const int ia = a.id();
  return a.tape()->Record(c * a.value(), a.requires_grad(),
                          [ia, c](Tape& t, int self) {
                            t.MutableGrad(ia) += c * t.GradOf(self);
                          });
}

Var AddScalar(const Var& a, double c) {
  const int ia = a.id();
  return a.tape()->Record(a.value().array() + c, a.requires_grad(),
                          [ia](Tape& t, int self) {
                            t.MutableGrad(ia) += t.GradOf(self);
                          });
}

Var Tanh(const Var& a) {
  const int ia = a.id();
  return a.tape()->Record(VectorizedTanh(a.value()), a.requires_grad(),
                          [ia](Tape& t, int self) {
                            const Matrix& y = t.ValueOf(self);
                            t.MutableGrad(ia).array() +=
                                t.GradOf(self).array() *
                                (1.0 - y.array().square());
                          });
}

Var Relu(const Var& a) {
  const int ia = a.id();
  return a.tape()->Record(a.value().cwiseMax(0.0), a.requires_grad(),
                          [ia](Tape& t, int self) {
                            const Matrix& y = t.ValueOf(self);
                            t.MutableGrad(ia).array() +=
                                (y.array() > 0.0)
                                    .select(t.GradOf(self).array(), 0.0);
                          });
}

Var Exp(const Var& a) {
  const int ia = a.id();
  return a.tape()->Record(a.value().array().exp().matrix(), a.requires_grad(),
                          [ia](Tape& t, int self) {
                            t.MutableGrad(ia).array() +=
                                t.GradOf(self).array() *
                                t.ValueOf(self).array();
                          });
}

Var Log(const Var& a) {
  return Unary(
      a, [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Var Square(const Var& a) {
  return Unary(
      a, [](double x) { return x * x; },
      [](double x, double) { return 2.0 * x; });
}

Var Abs(const Var& a) {
  return Unary(
      a, [](double x) { return std::abs(x); },
      [](double x, double) {
        return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
      });
}

Var Sqrt(const Var& a) {
  return Unary(
      a, [](double x) { return std::sqrt(x); },
      [](double, double y) { return y > 0.0 ? 0.5 / y : 0.0; });
}

Var Softplus(const Var& a) {
  return Unary(
      a,
      [](double x) {
        return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
      },
      [](double x, double) { return 1.0 / (1.0 + std::exp(-x)); });
}

Var Clamp(const Var& a, double lo, double hi) {
  return Unary(
      a, [lo, hi](double x) { return x < lo ? lo : (x > hi ? hi : x); },
      [lo, hi](double x, double) { return (x < lo || x > hi) ? 0.0 : 1.0; });
}

Var Linear(const Var& x, const Var& w, const Var& b) {
  Tape& t = SameTape(x, w);
  SameTape(x, b);
  if (x.cols() != w.cols()) {
    throw DimensionError("Linear: input width " + std::to_string(x.cols()) +
                         " does not match weight width " +
                         std::to_string(w.cols()));
  }
  if (b.rows() != 1 || b.cols() != w.rows()) {
    throw DimensionError("Linear: bias must be 1x" + std::to_string(w.rows()));
  }
  Matrix out = x.value() * w.value().transpose();
  out.rowwise() += b.value().row(0);
  const int ix = x.id(), iw = w.id(), ib = b.id();
  return t.Record(
      std::move(out),
      x.requires_grad() || w.requires_grad() || b.requires_grad(),
      [ix, iw, ib](Tape& t, int self) {
        const Matrix& g = t.GradOf(self);
        if (t.RequiresGrad(iw)) {
          t.MutableGrad(iw).noalias() += g.transpose() * t.ValueOf(ix);
        }
        if (t.RequiresGrad(ib)) t.MutableGrad(ib) += g.colwise().sum();
        if (t.RequiresGrad(ix)) {
          t.MutableGrad(ix).noalias() += g * t.ValueOf(iw);
        }
      });
}

Var Linear(const Var& x, const Var& w) {
  Tape& t = SameTape(x, w);
  if (x.cols() != w.cols()) {
    throw DimensionError("Linear: input width " + std::to_string(x.cols()) +
                         " does not match weight width " +
                         std::to_string(w.cols()));
  }
  const int ix = x.id(), iw = w.id();
  return t.Record(x.value() * w.value().transpose(),
                  x.requires_grad() || w.requires_grad(),
                  [ix, iw](Tape& t, int self) {
                    const Matrix& g = t.GradOf(self);
                    if (t.RequiresGrad(iw)) {
                      t.MutableGrad(iw).noalias() +=
                          g.transpose() * t.ValueOf(ix);
                    }
                    if (t.RequiresGrad(ix)) {
                      t.MutableGrad(ix).noalias() += g * t.ValueOf(iw);
                    }
                  });
}

Var ConcatCols(const Var& a, const Var& b) {
  Tape& t = SameTape(a, b);
  if (a.rows() != b.rows()) {
    throw DimensionError("ConcatCols: row counts differ");
  }
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a.value(), b.value();
  const int ia = a.id(), ib = b.id();
  const int ca = a.cols(), cb = b.cols();
  return t.Record(std::move(out), a.requires_grad() || b.requires_grad(),
                  [ia, ib, ca, cb](Tape& t, int self) {
                    const Matrix& g = t.GradOf(self);
                    if (t.RequiresGrad(ia)) {
                      t.MutableGrad(ia) += g.leftCols(ca);
                    }
                    if (t.RequiresGrad(ib)) {
                      t.MutableGrad(ib) += g.rightCols(cb);
                    }
                  });
}

Var SliceCols(const Var& a, int start, int count) {
  if (start < 0 || count <= 0 || start + count > a.cols()) {
    throw DimensionError("SliceCols: range out of bounds");
  }
  const int ia = a.id();
  return a.tape()->Record(a.value().middleCols(start, count),
                          a.requires_grad(),
                          [ia, start, count](Tape& t, int self) {
                            t.MutableGrad(ia).middleCols(start, count) +=
                                t.GradOf(self);
                          });
}

Var RowSum(const Var& a) {
  const int ia = a.id();
  return a.tape()->Record(a.value().rowwise().sum(), a.requires_grad(),
                          [ia](Tape& t, int self) {
                            Matrix& ga = t.MutableGrad(ia);
                            ga.colwise() += t.GradOf(self).col(0);
                          });
}

Var SumAll(const Var& a) {
  const int ia = a.id();
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return a.tape()->Record(std::move(out), a.requires_grad(),
                          [ia](Tape& t, int self) {
                            t.MutableGrad(ia).array() += t.GradOf(self)(0, 0);
                          });
}

Var MeanAll(const Var& a) {
  return Scale(SumAll(a), 1.0 / static_cast<double>(a.value().size()));
}

}  // namespace l2t
