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

#include "l2t/student/student.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

bool UsesAsym(StudentLossMode mode) {
  return mode == StudentLossMode::kAsym || mode == StudentLossMode::kCombined;
}

void CheckBatch(const EnvSpec& spec, const Matrix& states,
                const Matrix& observations) {
  if (states.rows() == 0) throw ContractError("empty student batch");
  if (states.rows() != observations.rows()) {
    throw DimensionError("states and observations are not index-aligned");
  }
  if (states.cols() != spec.state_dim || observations.cols() != spec.obs_dim) {
    throw DimensionError("student batch width does not match the env");
  }
}

}  // namespace

std::string_view StudentLossModeString(StudentLossMode mode) {
  switch (mode) {
    case StudentLossMode::kBcL1:
      return "bc_l1";
    case StudentLossMode::kBcL2:
      return "bc_l2";
    case StudentLossMode::kKl:
      return "kl";
    case StudentLossMode::kAsym:
      return "asym";
    case StudentLossMode::kCombined:
      return "combined";
  }
  return "unknown";
}

StudentLossMode ParseStudentLossMode(std::string_view name) {
  if (name == "bc_l1") return StudentLossMode::kBcL1;
  if (name == "bc_l2") return StudentLossMode::kBcL2;
  if (name == "kl") return StudentLossMode::kKl;
  if (name == "asym") return StudentLossMode::kAsym;
  if (name == "combined") return StudentLossMode::kCombined;
  throw std::invalid_argument("unknown loss mode '" + std::string(name) + "'");
}

StudentAgent::StudentAgent(const EnvSpec& spec, const StudentConfig& config,
                           std::mt19937_64& init_rng)
    : spec_(spec), config_(config) {
  if (config.combined_bc_p != 1 && config.combined_bc_p != 2) {
    throw std::invalid_argument("combined_bc_p must be 1 or 2");
  }
  policy_ = GaussianPolicy(spec.obs_dim, spec.action_dim, config.hidden,
                           config.activation, init_rng);
  opt_ = Adam(policy_.net().Parameters(), AdamOptions{.learning_rate = config.lr});
}

StudentAgent::StudentAgent(const StudentAgent& other)
    : spec_(other.spec_),
      config_(other.config_),
      policy_(other.policy_),
      opt_(other.opt_) {
  opt_.Rebind(policy_.net().Parameters());
}

StudentAgent& StudentAgent::operator=(const StudentAgent& other) {
  if (this != &other) {
    spec_ = other.spec_;
    config_ = other.config_;
    policy_ = other.policy_;
    opt_ = other.opt_;
    opt_.Rebind(policy_.net().Parameters());
  }
  return *this;
}

Var StudentAgent::BcTerm(Tape& tape, const HeadVars& student,
                         const DiagGaussianHead& target, int p) const {
  auto norm = [p](const Var& diff) {
    return p == 1 ? RowSum(Abs(diff)) : Sqrt(RowSum(Square(diff)));
  };
  Var loss = MeanAll(norm(Sub(student.mean, tape.Constant(target.mean))));
  if (config_.bc_log_std_weight > 0.0) {
    Var gap = Sub(student.log_std, tape.Constant(target.log_std));
    loss = Add(loss, Scale(MeanAll(norm(gap)), config_.bc_log_std_weight));
  }
  return loss;
}

StudentAgent::LossVars StudentAgent::BuildLoss(Tape& tape,
                                               TeacherAgent& teacher,
                                               const Matrix& states,
                                               const Matrix& observations,
                                               const Matrix* noise,
                                               bool trainable) {
  CheckBatch(spec_, states, observations);
  LossVars out;
  HeadVars head =
      policy_.Distribution(tape, tape.Constant(observations), trainable);
  const StudentLossMode mode = config_.loss_mode;

  if (mode != StudentLossMode::kAsym) {
    const DiagGaussianHead target = teacher.policy().Distribution(states);
    switch (mode) {
      case StudentLossMode::kBcL1:
        out.imitation = BcTerm(tape, head, target, 1);
        break;
      case StudentLossMode::kBcL2:
        out.imitation = BcTerm(tape, head, target, 2);
        break;
      case StudentLossMode::kCombined:
        out.imitation = BcTerm(tape, head, target, config_.combined_bc_p);
        break;
      case StudentLossMode::kKl:
        out.imitation = MeanAll(KlDiagGaussian(
            head.mean, head.log_std, tape.Constant(target.mean),
            tape.Constant(target.log_std)));
        break;
      case StudentLossMode::kAsym:
        break;
    }
    out.has_imitation = true;
  }
  if (UsesAsym(mode)) {
    SquashedSampleVar sample = SampleSquashed(head.mean, head.log_std, *noise);
    // The critic sees the privileged state paired with the student's action.
    Var q = teacher.critics().MinQ(tape, tape.Constant(states), sample.action);
    out.asym = MeanAll(
        Sub(Scale(sample.log_prob, teacher.config().entropy_temp), q));
    out.has_asym = true;
  }
  if (out.has_imitation && out.has_asym) {
    out.total = Add(out.imitation, out.asym);
  } else {
    out.total = out.has_imitation ? out.imitation : out.asym;
  }
  return out;
}

double StudentAgent::BcLoss(const TeacherAgent& teacher, const Matrix& states,
                            const Matrix& observations, int p) const {
  CheckBatch(spec_, states, observations);
  if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
  const Matrix diff = policy_.Distribution(observations).mean -
                      teacher.policy().Distribution(states).mean;
  const Eigen::VectorXd norms =
      p == 1 ? diff.cwiseAbs().rowwise().sum().eval()
             : diff.rowwise().squaredNorm().cwiseSqrt().eval();
  return norms.mean();
}

double StudentAgent::KlLoss(const TeacherAgent& teacher, const Matrix& states,
                            const Matrix& observations) const {
  CheckBatch(spec_, states, observations);
  return KlDiagGaussian(policy_.Distribution(observations),
                        teacher.policy().Distribution(states))
      .mean();
}

double StudentAgent::AsymLoss(TeacherAgent& teacher, const Matrix& states,
                              const Matrix& observations, const Matrix& noise) {
  CheckBatch(spec_, states, observations);
  Tape tape;
  HeadVars head = policy_.Distribution(tape, tape.Constant(observations),
                                       /*trainable=*/false);
  SquashedSampleVar sample = SampleSquashed(head.mean, head.log_std, noise);
  Var q = teacher.critics().MinQ(tape, tape.Constant(states), sample.action);
  return MeanAll(Sub(Scale(sample.log_prob, teacher.config().entropy_temp), q))
      .scalar();
}

StudentLossReport StudentAgent::Evaluate(TeacherAgent& teacher,
                                         const Matrix& states,
                                         const Matrix& observations,
                                         const Matrix& noise) {
  Tape tape;
  LossVars loss =
      BuildLoss(tape, teacher, states, observations, &noise, false);
  StudentLossReport report;
  if (loss.has_imitation) report.bc_component = loss.imitation.scalar();
  if (loss.has_asym) report.asym_component = loss.asym.scalar();
  report.total = loss.total.scalar();
  return report;
}

StudentLossReport StudentAgent::Update(TeacherAgent& teacher,
                                       const Matrix& states,
                                       const Matrix& observations,
                                       std::mt19937_64& rng) {
  Matrix noise;
  if (UsesAsym(config_.loss_mode)) {
    noise = StandardNormal(static_cast<int>(states.rows()), spec_.action_dim,
                           rng);
  }
  Tape tape;
  LossVars loss = BuildLoss(tape, teacher, states, observations, &noise, true);
  StudentLossReport report;
  if (loss.has_imitation) report.bc_component = loss.imitation.scalar();
  if (loss.has_asym) report.asym_component = loss.asym.scalar();
  report.total = loss.total.scalar();
  if (!std::isfinite(report.total)) {
    throw NumericError("student loss is not finite");
  }
  opt_.ZeroGrad();
  tape.Backward(loss.total);
  opt_.Step();
  return report;
}

Vector StudentAgent::Act(const Vector& o, bool deterministic,
                         std::mt19937_64& rng) const {
  if (o.size() != spec_.obs_dim) {
    throw DimensionError("student expects an observation of size " +
                         std::to_string(spec_.obs_dim));
  }
  return PolicyAct(spec_, policy_, o, deterministic, rng);
}

NamedTensors StudentAgent::Save() const {
  NamedTensors out;
  AppendMlp(out, "student.policy.", policy_.net());
  return out;
}

void StudentAgent::Load(const NamedTensors& tensors) {
  RestoreMlp(tensors, "student.policy.", policy_.net());
}

}  // namespace l2t
