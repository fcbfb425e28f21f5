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

#include "l2t/numcore/gaussian.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * log(2 pi)

// Largest double below 1. tanh rounds to exactly +-1 once |u| > ~19.
constexpr double kActionBound = 1.0 - 0x1p-53;

void CheckHeadShapes(const DiagGaussianHead& head) {
  if (head.mean.rows() != head.log_std.rows() ||
      head.mean.cols() != head.log_std.cols()) {
    throw DimensionError("Gaussian head: mean and log_std shapes differ");
  }
}

double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

double LogOneMinusTanhSquared(double u) {
  return 2.0 * (std::numbers::ln2 - u - Softplus(-2.0 * u));
}

SquashedSample SampleSquashed(const DiagGaussianHead& head,
                              const Matrix& noise) {
  CheckHeadShapes(head);
  if (noise.rows() != head.mean.rows() || noise.cols() != head.mean.cols()) {
    throw DimensionError("SampleSquashed: noise shape does not match head");
  }
  const Eigen::Index rows = head.mean.rows(), cols = head.mean.cols();
  SquashedSample out{Matrix(rows, cols), Matrix(rows, 1)};
  for (Eigen::Index i = 0; i < rows; ++i) {
    double lp = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double eps = noise(i, j);
      const double u = head.mean(i, j) + std::exp(head.log_std(i, j)) * eps;
      out.action(i, j) = std::clamp(std::tanh(u), -kActionBound, kActionBound);
      lp += -0.5 * eps * eps - head.log_std(i, j) - kHalfLog2Pi -
            LogOneMinusTanhSquared(u);
    }
    out.log_prob(i, 0) = lp;
  }
  return out;
}

SquashedSampleVar SampleSquashed(const Var& mean, const Var& log_std,
                                 const Matrix& noise) {
  if (noise.rows() != mean.rows() || noise.cols() != mean.cols() ||
      log_std.rows() != mean.rows() || log_std.cols() != mean.cols()) {
    throw DimensionError("SampleSquashed: noise/head shapes differ");
  }
  Tape& tape = *mean.tape();
  Var eps = tape.Constant(noise);
  Var u = Add(mean, Mul(Exp(log_std), eps));
  Var gauss = tape.Constant(
      (-0.5 * noise.array().square() - kHalfLog2Pi).matrix());
  // log(1 - tanh(u)^2) = 2 (log 2 - u - softplus(-2u))
  Var log_jac = Scale(
      AddScalar(Scale(Add(u, Softplus(Scale(u, -2.0))), -1.0),
                std::numbers::ln2),
      2.0);
  Var log_prob = RowSum(Sub(Sub(gauss, log_std), log_jac));
  return {Clamp(Tanh(u), -kActionBound, kActionBound), log_prob};
}

Matrix SquashedLogProb(const DiagGaussianHead& head, const Matrix& action) {
  CheckHeadShapes(head);
  Matrix out(head.mean.rows(), 1);
  for (Eigen::Index i = 0; i < head.mean.rows(); ++i) {
    double lp = 0.0;
    for (Eigen::Index j = 0; j < head.mean.cols(); ++j) {
      const double u = std::atanh(action(i, j));
      const double eps = (u - head.mean(i, j)) / std::exp(head.log_std(i, j));
      lp += -0.5 * eps * eps - head.log_std(i, j) - kHalfLog2Pi -
            LogOneMinusTanhSquared(u);
    }
    out(i, 0) = lp;
  }
  return out;
}

Matrix KlDiagGaussian(const DiagGaussianHead& p, const DiagGaussianHead& q) {
  CheckHeadShapes(p);
  CheckHeadShapes(q);
  if (p.mean.rows() != q.mean.rows() || p.mean.cols() != q.mean.cols()) {
    throw DimensionError("KL: heads have different shapes");
  }
  Matrix out(p.mean.rows(), 1);
  for (Eigen::Index i = 0; i < p.mean.rows(); ++i) {
    double kl = 0.0;
    for (Eigen::Index j = 0; j < p.mean.cols(); ++j) {
      const double lp = p.log_std(i, j), lq = q.log_std(i, j);
      const double dm = p.mean(i, j) - q.mean(i, j);
      kl += (lq - lp) +
            0.5 * (std::exp(2.0 * (lp - lq)) + dm * dm * std::exp(-2.0 * lq)) -
            0.5;
    }
    out(i, 0) = kl;
  }
  return out;
}

Var KlDiagGaussian(const Var& p_mean, const Var& p_log_std, const Var& q_mean,
                   const Var& q_log_std) {
  Var log_ratio = Sub(q_log_std, p_log_std);
  Var var_ratio = Exp(Scale(log_ratio, -2.0));
  Var diff = Sub(p_mean, q_mean);
  Var mahal = Mul(Square(diff), Exp(Scale(q_log_std, -2.0)));
  Var per_dim =
      AddScalar(Add(log_ratio, Scale(Add(var_ratio, mahal), 0.5)), -0.5);
  return RowSum(per_dim);
}

}  // namespace l2t
