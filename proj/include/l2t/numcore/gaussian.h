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

#ifndef L2T_NUMCORE_GAUSSIAN_H_
#define L2T_NUMCORE_GAUSSIAN_H_

#include "l2t/numcore/autodiff.h"
#include "l2t/numcore/tensor.h"

namespace l2t {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

// Pre-squash diagonal Gaussian, one distribution per row (B x action_dim).
struct DiagGaussianHead {
  Matrix mean;
  Matrix log_std;
};

struct SquashedSample {
  Matrix action;    // B x d, strictly inside (-1, 1)
  Matrix log_prob;  // B x 1
};

struct SquashedSampleVar {
  Var action;
  Var log_prob;
};

// log(1 - tanh(u)^2) evaluated without cancellation.
double LogOneMinusTanhSquared(double u);

// action = tanh(mean + exp(log_std) * noise), with the log-density of the
// squashed variable (Gaussian log-density minus sum log(1 - action^2)).
SquashedSample SampleSquashed(const DiagGaussianHead& head,
                              const Matrix& noise);
// Reparameterized version on the tape; gradients flow to mean and log_std.
SquashedSampleVar SampleSquashed(const Var& mean, const Var& log_std,
                                 const Matrix& noise);

// Log-density of a squashed action a in (-1, 1)^d.
Matrix SquashedLogProb(const DiagGaussianHead& head, const Matrix& action);

// Row-wise KL(p || q) of the pre-squash Gaussians, B x 1.
Matrix KlDiagGaussian(const DiagGaussianHead& p, const DiagGaussianHead& q);
Var KlDiagGaussian(const Var& p_mean, const Var& p_log_std, const Var& q_mean,
                   const Var& q_log_std);

}  // namespace l2t

#endif  // L2T_NUMCORE_GAUSSIAN_H_
