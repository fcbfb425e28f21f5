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

#ifndef L2T_STUDENT_STUDENT_H_
#define L2T_STUDENT_STUDENT_H_

#include <random>
#include <string_view>
#include <vector>

#include "l2t/envs/env.h"
#include "l2t/numcore/adam.h"
#include "l2t/numcore/checkpoint.h"
#include "l2t/numcore/policy.h"
#include "l2t/teacher/teacher.h"

namespace l2t {

enum class StudentLossMode { kBcL1, kBcL2, kKl, kAsym, kCombined };

std::string_view StudentLossModeString(StudentLossMode mode);
StudentLossMode ParseStudentLossMode(std::string_view name);

struct StudentConfig {
  std::vector<int> hidden{64, 64};
  Activation activation = Activation::kRelu;
  double lr = 3e-4;
  StudentLossMode loss_mode = StudentLossMode::kCombined;
  // p of the behavior-cloning term in combined mode (1 or 2).
  int combined_bc_p = 1;
  // Optional L_p penalty on the log_std gap, added to the BC term.
  double bc_log_std_weight = 0.0;

  friend bool operator==(const StudentConfig&, const StudentConfig&) = default;
};

// Per-update breakdown. `bc_component` holds the imitation term (BC or KL),
// `asym_component` the critic-guided term; `total` is their sum, computed as
// a single floating-point addition in combined mode.
struct StudentLossReport {
  double bc_component = 0.0;
  double asym_component = 0.0;
  double total = 0.0;
};

// Observation-space policy trained purely from buffer data. Every loss pairs
// row i of `states` (privileged, teacher side) with row i of `observations`
// (student side). Teacher outputs enter as constants.
class StudentAgent {
 public:
  StudentAgent() = default;
  StudentAgent(const EnvSpec& spec, const StudentConfig& config,
               std::mt19937_64& init_rng);
  StudentAgent(const StudentAgent& other);
  StudentAgent& operator=(const StudentAgent& other);
  StudentAgent(StudentAgent&&) = default;
  StudentAgent& operator=(StudentAgent&&) = default;

  // mean_b || mu_s(o_b) - mu_t(s_b) ||_p on pre-squash means.
  double BcLoss(const TeacherAgent& teacher, const Matrix& states,
                const Matrix& observations, int p) const;
  // mean_b KL(p_s(.|o_b) || pi_t(.|s_b)).
  double KlLoss(const TeacherAgent& teacher, const Matrix& states,
                const Matrix& observations) const;
  // mean_b [temp log p_s(a|o_b) - min Q_t(s_b, a)], a = squash(mu + sigma n)
  // with the given standard-normal noise.
  double AsymLoss(TeacherAgent& teacher, const Matrix& states,
                  const Matrix& observations, const Matrix& noise);

  // One optimizer step on the configured loss. Draws reparameterization
  // noise from `rng` only for modes with an asymmetric term.
  StudentLossReport Update(TeacherAgent& teacher, const Matrix& states,
                           const Matrix& observations, std::mt19937_64& rng);
  // Same as Update without touching parameters.
  StudentLossReport Evaluate(TeacherAgent& teacher, const Matrix& states,
                             const Matrix& observations, const Matrix& noise);

  // Environment-scaled action for one observation.
  Vector Act(const Vector& o, bool deterministic, std::mt19937_64& rng) const;

  const EnvSpec& spec() const { return spec_; }
  const StudentConfig& config() const { return config_; }
  GaussianPolicy& policy() { return policy_; }
  const GaussianPolicy& policy() const { return policy_; }

  NamedTensors Save() const;
  void Load(const NamedTensors& tensors);

 private:
  struct LossVars {
    Var imitation;
    Var asym;
    Var total;
    bool has_imitation = false;
    bool has_asym = false;
  };
  LossVars BuildLoss(Tape& tape, TeacherAgent& teacher, const Matrix& states,
                     const Matrix& observations, const Matrix* noise,
                     bool trainable);
  Var BcTerm(Tape& tape, const HeadVars& student, const DiagGaussianHead& target,
             int p) const;

  EnvSpec spec_;
  StudentConfig config_;
  GaussianPolicy policy_;
  Adam opt_;
};

}  // namespace l2t

#endif  // L2T_STUDENT_STUDENT_H_
