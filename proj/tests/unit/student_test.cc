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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "l2t/envs/env.h"
#include "l2t/numcore/errors.h"
#include "l2t/student/student.h"
#include "l2t/teacher/teacher.h"
#include "test_util.h"

namespace l2t {
namespace {

// Zeroes every weight so the head is the constant [mean, log_std] given by
// the output bias.
void MakeConstantHead(GaussianPolicy& policy, const std::vector<double>& mean,
                      const std::vector<double>& log_std) {
  Mlp& net = policy.net();
  for (int l = 0; l < net.num_layers(); ++l) {
    for (double& w : net.weight(l).data()) w = 0.0;
    for (double& b : net.bias(l).data()) b = 0.0;
  }
  auto bias = net.bias(net.num_layers() - 1).data();
  const std::size_t d = mean.size();
  for (std::size_t i = 0; i < d; ++i) {
    bias[i] = mean[i];
    bias[d + i] = log_std[i];
  }
}

std::vector<double> Flatten(const NamedTensors& tensors) {
  std::vector<double> out;
  for (const auto& [name, t] : tensors) {
    out.insert(out.end(), t.data().begin(), t.data().end());
  }
  return out;
}

class StudentFixture : public ::testing::Test {
 protected:
  StudentFixture()
      : spec_(MakeEnvSpec(EnvName::kPointmass)), rng_(5),
        teacher_(spec_, TeacherConfig{}, rng_),
        student_(spec_, StudentConfig{}, rng_) {}

  Matrix States(int n) { return test::RandomMatrix(n, 4, rng_, -1.0, 1.0); }

  StudentAgent StudentWith(StudentConfig cfg) {
    std::mt19937_64 init(17);
    return StudentAgent(spec_, cfg, init);
  }

  EnvSpec spec_;
  std::mt19937_64 rng_;
  TeacherAgent teacher_;
  StudentAgent student_;
};

TEST_F(StudentFixture, IdenticalHeadsGiveZeroImitationLoss) {
  student_.policy() = teacher_.policy();
  const Matrix s = States(32);
  EXPECT_EQ(student_.BcLoss(teacher_, s, s, 1), 0.0);
  EXPECT_EQ(student_.BcLoss(teacher_, s, s, 2), 0.0);
  EXPECT_EQ(student_.KlLoss(teacher_, s, s), 0.0);
}

TEST_F(StudentFixture, BcArithmetic) {
  const Matrix s = States(3);
  MakeConstantHead(teacher_.policy(), {0.0, 0.0}, {0.0, 0.0});
  MakeConstantHead(student_.policy(), {1.0, 0.0}, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(student_.BcLoss(teacher_, s, s, 2), 1.0);
  EXPECT_DOUBLE_EQ(student_.BcLoss(teacher_, s, s, 1), 1.0);
  MakeConstantHead(student_.policy(), {1.0, 1.0}, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(student_.BcLoss(teacher_, s, s, 1), 2.0);
  EXPECT_DOUBLE_EQ(student_.BcLoss(teacher_, s, s, 2), std::sqrt(2.0));
}

TEST_F(StudentFixture, BcIgnoresLogStdByDefault) {
  const Matrix s = States(3);
  MakeConstantHead(teacher_.policy(), {0.2, -0.1}, {0.0, 0.0});
  MakeConstantHead(student_.policy(), {0.2, -0.1}, {-1.0, 1.0});
  EXPECT_EQ(student_.BcLoss(teacher_, s, s, 2), 0.0);
}

TEST_F(StudentFixture, KlUnitVarianceMeanGap) {
  const Matrix s = States(4);
  MakeConstantHead(teacher_.policy(), {0.0, 0.0}, {0.0, 0.0});
  MakeConstantHead(student_.policy(), {1.0, 0.0}, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(student_.KlLoss(teacher_, s, s), 0.5);
}

TEST_F(StudentFixture, KlMatchesMonteCarlo) {
  // Squashing is a bijection, so the KL of the pre-squash Gaussians is the
  // KL of the action distributions. Estimate E_{x~p_s}[log p_s - log pi_t].
  const Matrix s = States(4);
  const Matrix o = s + test::RandomMatrix(4, 4, rng_, -0.3, 0.3);
  const DiagGaussianHead ps = student_.policy().Distribution(o);
  const DiagGaussianHead pt = teacher_.policy().Distribution(s);
  std::mt19937_64 mc(8);
  std::normal_distribution<double> n;
  const int samples = 400000;
  double total = 0.0;
  for (int b = 0; b < 4; ++b) {
    double acc = 0.0;
    for (int k = 0; k < samples; ++k) {
      for (int j = 0; j < 2; ++j) {
        const double z = n(mc);
        const double x = ps.mean(b, j) + std::exp(ps.log_std(b, j)) * z;
        const double zt = (x - pt.mean(b, j)) / std::exp(pt.log_std(b, j));
        acc += (-0.5 * z * z - ps.log_std(b, j)) -
               (-0.5 * zt * zt - pt.log_std(b, j));
      }
    }
    total += acc / samples;
  }
  const double mc_kl = total / 4;
  const double kl = student_.KlLoss(teacher_, s, o);
  EXPECT_GT(kl, 0.0);
  EXPECT_NEAR(kl, mc_kl, 0.01 * kl);
}

TEST_F(StudentFixture, ImitationLossesAreNonNegative) {
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix s = States(8);
    const Matrix o = States(8);
    EXPECT_GE(student_.BcLoss(teacher_, s, o, 1), 0.0);
    EXPECT_GE(student_.BcLoss(teacher_, s, o, 2), 0.0);
    EXPECT_GE(student_.KlLoss(teacher_, s, o), 0.0);
  }
}

TEST_F(StudentFixture, AsymEqualsTeacherActorLossWhenPoliciesMatch) {
  student_.policy() = teacher_.policy();
  const Matrix s = States(64);
  const Matrix noise = StandardNormal(64, 2, rng_);
  EXPECT_NEAR(student_.AsymLoss(teacher_, s, s, noise),
              teacher_.ActorLoss(s, noise), 1e-12);
}

TEST_F(StudentFixture, FlatCriticGivesZeroAsymGradient) {
  // First-layer critic weights on the action inputs are zeroed, so Q does
  // not depend on a; with zero temperature nothing drives the student.
  for (Mlp* q : {&teacher_.critics().q1(), &teacher_.critics().q2()}) {
    auto w = q->weight(0).data();
    const int in = q->input_dim();
    for (int r = 0; r < q->weight(0).rows(); ++r) {
      for (int c = spec_.state_dim; c < in; ++c) w[r * in + c] = 0.0;
    }
  }
  teacher_.set_entropy_temp(0.0);
  StudentConfig cfg;
  cfg.loss_mode = StudentLossMode::kAsym;
  StudentAgent student = StudentWith(cfg);
  const auto before = Flatten(student.Save());
  const Matrix s = States(32);
  student.Update(teacher_, s, s, rng_);
  EXPECT_EQ(Flatten(student.Save()), before);
}

TEST_F(StudentFixture, IdenticalBcL2UpdateLeavesParametersUnchanged) {
  StudentConfig cfg;
  cfg.loss_mode = StudentLossMode::kBcL2;
  StudentAgent student = StudentWith(cfg);
  student.policy() = teacher_.policy();
  const auto before = Flatten(student.Save());
  const Matrix s = States(32);
  const StudentLossReport report = student.Update(teacher_, s, s, rng_);
  EXPECT_EQ(report.total, 0.0);
  // The L2 norm's gradient at 0 is defined as 0, so Adam takes no step.
  EXPECT_EQ(Flatten(student.Save()), before);
}

TEST_F(StudentFixture, CombinedTotalIsExactSum) {
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix s = States(16);
    const Matrix o = s + test::RandomMatrix(16, 4, rng_, -0.1, 0.1);
    const StudentLossReport r = student_.Update(teacher_, s, o, rng_);
    EXPECT_EQ(r.total, r.bc_component + r.asym_component);
    EXPECT_GE(r.bc_component, 0.0);
    const StudentLossReport e =
        student_.Evaluate(teacher_, s, o, StandardNormal(16, 2, rng_));
    EXPECT_EQ(e.total, e.bc_component + e.asym_component);
  }
}

TEST_F(StudentFixture, CombinedReportMatchesComponents) {
  const Matrix s = States(16);
  const Matrix noise = StandardNormal(16, 2, rng_);
  const StudentLossReport r = student_.Evaluate(teacher_, s, s, noise);
  EXPECT_NEAR(r.bc_component, student_.BcLoss(teacher_, s, s, 1), 1e-12);
  EXPECT_NEAR(r.asym_component, student_.AsymLoss(teacher_, s, s, noise), 1e-12);
}

TEST_F(StudentFixture, OverfitsOneFrozenBatch) {
  // A distant constant target keeps the loss well above the Adam step scale
  // for the monotone window; near zero the non-smooth norm makes Adam hover
  // at a level proportional to the learning rate.
  MakeConstantHead(teacher_.policy(), {0.8, -0.6}, {0.0, 0.0});
  StudentConfig cfg;
  cfg.loss_mode = StudentLossMode::kBcL2;
  StudentAgent student = StudentWith(cfg);
  const Matrix s = States(32);
  const Matrix o = s + test::RandomMatrix(32, 4, rng_, -0.1, 0.1);
  double prev = student.BcLoss(teacher_, s, o, 2);
  const double first = prev;
  for (int i = 0; i < 100; ++i) {
    const double reported = student.Update(teacher_, s, o, rng_).total;
    EXPECT_NEAR(reported, prev, 1e-12);
    const double now = student.BcLoss(teacher_, s, o, 2);
    EXPECT_LE(now, prev) << "update " << i;
    prev = now;
  }
  EXPECT_LT(prev, first);
  for (int i = 0; i < 2900; ++i) student.Update(teacher_, s, o, rng_);
  EXPECT_LT(student.BcLoss(teacher_, s, o, 2), 1e-2 * first);
}

TEST_F(StudentFixture, KlModeDrivesLossDown) {
  StudentConfig cfg;
  cfg.loss_mode = StudentLossMode::kKl;
  cfg.lr = 1e-3;
  StudentAgent student = StudentWith(cfg);
  const Matrix s = States(32);
  const double first = student.KlLoss(teacher_, s, s);
  for (int i = 0; i < 300; ++i) student.Update(teacher_, s, s, rng_);
  EXPECT_LT(student.KlLoss(teacher_, s, s), 0.05 * first);
}

TEST(StudentAsymTest, QuadraticCriticArgmax) {
  EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  spec.action_low = -1.0;
  spec.action_high = 1.0;
  TeacherConfig tcfg;
  tcfg.gamma = 0.0;
  tcfg.entropy_temp = 0.0;
  tcfg.critic_lr = 1e-3;
  std::mt19937_64 rng(6);
  TeacherAgent teacher(spec, tcfg, rng);
  const int n = 128;
  std::uniform_real_distribution<double> act(-1.0, 1.0);
  Matrix s = Matrix::Zero(n, 2), a(n, 1), r(n, 1);
  for (int it = 0; it < 3000; ++it) {
    for (int i = 0; i < n; ++i) {
      a(i, 0) = act(rng);
      r(i, 0) = -(a(i, 0) - 0.3) * (a(i, 0) - 0.3);
    }
    teacher.CriticUpdate(s, a, r, s, Matrix::Ones(n, 1), rng);
  }
  StudentConfig scfg;
  scfg.loss_mode = StudentLossMode::kAsym;
  scfg.lr = 1e-3;
  StudentAgent student(spec, scfg, rng);
  // Observations differ from states; the critic only sees s.
  const Matrix o = test::RandomMatrix(n, 2, rng, -0.5, 0.5);
  for (int it = 0; it < 3000; ++it) student.Update(teacher, s, o, rng);
  const Matrix mean = student.policy().Distribution(o).mean;
  EXPECT_NEAR(std::tanh(mean.mean()), 0.3, 1e-2);
  EXPECT_LT((mean.array().tanh() - 0.3).abs().maxCoeff(), 2e-2);
}

TEST_F(StudentFixture, UpdatesNeverTouchTeacherOrEnvironment) {
  const auto teacher_before = Flatten(teacher_.Save());
  const std::uint64_t steps_before = GlobalEnvStepCount();
  for (StudentLossMode mode :
       {StudentLossMode::kBcL1, StudentLossMode::kBcL2, StudentLossMode::kKl,
        StudentLossMode::kAsym, StudentLossMode::kCombined}) {
    StudentConfig cfg;
    cfg.loss_mode = mode;
    StudentAgent student = StudentWith(cfg);
    for (int i = 0; i < 5; ++i) {
      const Matrix s = States(16);
      student.Update(teacher_, s, s, rng_);
    }
  }
  EXPECT_EQ(Flatten(teacher_.Save()), teacher_before);
  EXPECT_EQ(GlobalEnvStepCount(), steps_before);
}

TEST_F(StudentFixture, DimensionMismatchThrows) {
  const Matrix s = States(4);
  EXPECT_THROW(student_.BcLoss(teacher_, s, Matrix::Zero(4, 3), 1),
               DimensionError);
  EXPECT_THROW(student_.KlLoss(teacher_, s, Matrix::Zero(5, 4)),
               DimensionError);
}

TEST_F(StudentFixture, LossModeNamesRoundTrip) {
  for (StudentLossMode mode :
       {StudentLossMode::kBcL1, StudentLossMode::kBcL2, StudentLossMode::kKl,
        StudentLossMode::kAsym, StudentLossMode::kCombined}) {
    EXPECT_EQ(ParseStudentLossMode(StudentLossModeString(mode)), mode);
  }
  EXPECT_ANY_THROW(ParseStudentLossMode("dagger"));
}

TEST_F(StudentFixture, SaveLoadRoundTrip) {
  StudentAgent other = StudentWith(StudentConfig{});
  other.Load(student_.Save());
  const Matrix o = States(6);
  EXPECT_EQ(other.policy().Distribution(o).mean,
            student_.policy().Distribution(o).mean);
  EXPECT_EQ(other.policy().Distribution(o).log_std,
            student_.policy().Distribution(o).log_std);
}

}  // namespace
}  // namespace l2t
