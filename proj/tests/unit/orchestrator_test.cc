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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "l2t/envs/env.h"
#include "l2t/envs/oracle.h"
#include "l2t/numcore/errors.h"
#include "l2t/orchestrator/config.h"
#include "l2t/orchestrator/evaluate.h"
#include "l2t/orchestrator/metrics.h"
#include "l2t/orchestrator/rng_streams.h"
#include "l2t/orchestrator/trainer.h"
#include "test_util.h"

namespace l2t {
namespace {

namespace fs = std::filesystem;

// Small enough to run in about a second.
ExperimentConfig TinyConfig() {
  ExperimentConfig cfg;
  cfg.total_steps = 600;
  cfg.warmup_steps = 100;
  cfg.eval_interval = 300;
  cfg.eval_episodes = 1;
  cfg.final_eval_episodes = 2;
  cfg.batch_size = 32;
  cfg.buffer_capacity = 10000;
  cfg.teacher.hidden = {16, 16};
  cfg.student.hidden = {16, 16};
  cfg.reward.hidden = {16, 16};
  cfg.bc_steps = 400;
  return cfg;
}

std::vector<double> Flatten(const NamedTensors& tensors) {
  std::vector<double> out;
  for (const auto& [name, t] : tensors) {
    out.insert(out.end(), t.data().begin(), t.data().end());
  }
  return out;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = test::TempPath(name);
  fs::remove_all(dir);
  return dir;
}

TEST(RngStreamTest, NamedStreamsAreStableAndDistinct) {
  EXPECT_EQ(StreamSeed(1, "eval"), StreamSeed(1, "eval"));
  EXPECT_NE(StreamSeed(1, "eval"), StreamSeed(2, "eval"));
  EXPECT_NE(StreamSeed(1, "eval"), StreamSeed(1, "final_eval"));
  EXPECT_NE(StreamSeed(1, "eval", 0), StreamSeed(1, "eval", 1));
  std::mt19937_64 a = MakeStream(3, "x"), b = MakeStream(3, "x");
  EXPECT_EQ(a(), b());
}

TEST(ConfigTest, ValidationNamesTheKey) {
  auto key_of = [](ExperimentConfig cfg) -> std::string {
    try {
      ValidateConfig(cfg);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return "";
  };
  EXPECT_EQ(key_of(ExperimentConfig{}), "");
  ExperimentConfig cfg;
  cfg.warmup_steps = cfg.total_steps + 1;
  EXPECT_EQ(key_of(cfg), "experiment.total_steps");
  cfg = {};
  cfg.eval_episodes = 0;
  EXPECT_EQ(key_of(cfg), "experiment.eval_episodes");
  cfg = {};
  cfg.alpha = -1.0;
  EXPECT_EQ(key_of(cfg), "noise.alpha");
  cfg = {};
  cfg.seeds.clear();
  EXPECT_EQ(key_of(cfg), "experiment.seeds");
}

TEST(ConfigTest, CurriculumRampIsAFractionOfTheRun) {
  const CurriculumSchedule s =
      MakeCurriculum(CurriculumShape::kLinear, 0.4, 0.3, 100000);
  EXPECT_EQ(s.ramp_steps, 30000);
  EXPECT_EQ(s.alpha_target, 0.4);
  EXPECT_EQ(CurriculumAlpha(s, 15000), 0.2);
}

TEST(EvaluateTest, SingleEpisodeHasZeroStd) {
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  const EvalStats st = EvaluateOracle(spec, 1, 4);
  EXPECT_EQ(st.return_std, 0.0);
  EXPECT_EQ(st.returns.size(), 1u);
  EXPECT_EQ(st.length_mean, 200.0);
}

TEST(EvaluateTest, ReproducibleAndRejectsZeroEpisodes) {
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  const EvalStats a = EvaluateRandomPolicy(spec, 3, 9);
  const EvalStats b = EvaluateRandomPolicy(spec, 3, 9);
  EXPECT_EQ(a.returns, b.returns);
  EXPECT_THROW(EvaluateRandomPolicy(spec, 0, 9), std::invalid_argument);
}

TEST(EvaluateTest, StatisticsMatchReturns) {
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  const EvalStats st = EvaluateRandomPolicy(spec, 7, 2);
  double mean = 0.0;
  for (double r : st.returns) mean += r / 7;
  double var = 0.0;
  for (double r : st.returns) var += (r - mean) * (r - mean) / 7;
  EXPECT_NEAR(st.return_mean, mean, 1e-9);
  EXPECT_NEAR(st.return_std, std::sqrt(var), 1e-9);
  EXPECT_NEAR(st.average_reward, mean / 200.0, 1e-9);
}

TEST(EvaluateTest, ControllersShareInitialStates) {
  // Same seed: episode j starts from the same state for any controller.
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  const Controller oracle = [&](const Vector& s) {
    return ScriptedOracle(spec, s);
  };
  const EvalStats a = EvaluateController(spec, oracle, 0.0, 3, 5);
  const EvalStats b = EvaluateOracle(spec, 3, 5);
  EXPECT_EQ(a.returns, b.returns);
}

TEST(EvaluateTest, RandomPolicyFallsInsideTheReferenceBand) {
  // Reference band: mean +- 3 sigma / sqrt(5) from a 100-episode run on an
  // independent seed, applied to a 5-episode evaluation.
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  const EvalStats ref = EvaluateRandomPolicy(spec, 100, StreamSeed(7, "ref"));
  const double half_width = 3.0 * ref.return_std / std::sqrt(5.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const EvalStats st = EvaluateRandomPolicy(spec, 5, seed);
    EXPECT_NEAR(st.return_mean, ref.return_mean, half_width) << seed;
  }
  // The documented band.
  EXPECT_GT(ref.return_mean, -1400.0);
  EXPECT_LT(ref.return_mean, -1000.0);
}

TEST(EvaluateTest, OracleBeatsRandomByAWideMargin) {
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  const EvalStats oracle = EvaluateOracle(spec, 20, 3);
  const EvalStats random = EvaluateRandomPolicy(spec, 20, 3);
  EXPECT_GT(oracle.return_mean, -250.0);
  EXPECT_LT(random.return_mean, -900.0);
}

TEST(AblationVerdictTest, PublishedTrendAndViolations) {
  EXPECT_TRUE(AblationVerdict(
      {{0.4, 5896}, {0.3, 6735}, {0.2, 7197}, {0.1, 7435}}));
  EXPECT_FALSE(AblationVerdict({{0.1, 5}, {0.2, 7}}));
  EXPECT_TRUE(AblationVerdict({{0.2, 3}, {0.1, 3}}));
  EXPECT_THROW(AblationVerdict({{0.1, 5}}), std::invalid_argument);
}

TEST(AblationVerdictTest, CurriculumReferenceDirection) {
  // With and without curriculum at the same alpha.
  const double with_curriculum = 455.13, without = 222.61;
  EXPECT_GT(with_curriculum, without);
}

TEST(TrainerTest, ZeroStepsLeavesAgentsUntouched) {
  ExperimentConfig cfg = TinyConfig();
  cfg.total_steps = 0;
  cfg.warmup_steps = 0;
  const TrainResult r = TrainL2tRl(cfg, 3);
  EXPECT_EQ(r.updates, 0);
  EXPECT_EQ(r.teacher_env_steps, 0u);
  EXPECT_FALSE(r.final_teacher.has_value());
  EXPECT_TRUE(r.evals.empty());
  std::mt19937_64 t_init = MakeStream(3, "teacher_init");
  const TeacherAgent fresh_teacher(MakeEnvSpec(cfg.env), cfg.teacher, t_init);
  EXPECT_EQ(Flatten(r.teacher.Save()), Flatten(fresh_teacher.Save()));
  std::mt19937_64 s_init = MakeStream(3, "student_init");
  const StudentAgent fresh_student(MakeEnvSpec(cfg.env), cfg.student, s_init);
  EXPECT_EQ(Flatten(r.student.Save()), Flatten(fresh_student.Save()));
}

TEST(TrainerTest, OnlyTheTeacherInteracts) {
  const ExperimentConfig cfg = TinyConfig();
  const std::uint64_t before = GlobalEnvStepCount();
  const TrainResult r = TrainL2tRl(cfg, 1);
  const std::uint64_t consumed = GlobalEnvStepCount() - before;
  EXPECT_EQ(r.student_env_steps, 0u);
  EXPECT_EQ(r.teacher_env_steps, static_cast<std::uint64_t>(cfg.total_steps));
  EXPECT_EQ(consumed, r.teacher_env_steps + r.eval_env_steps);
  EXPECT_EQ(r.updates, cfg.total_steps - cfg.warmup_steps);
  EXPECT_EQ(r.evals.size(), 2u);
  EXPECT_EQ(r.evals.back().alpha_eval, cfg.alpha);
}

TEST(TrainerTest, SeededRunsAreBitIdentical) {
  const ExperimentConfig cfg = TinyConfig();
  RunOptions a, b;
  a.output_dir = FreshDir("det_a");
  b.output_dir = FreshDir("det_b");
  const TrainResult ra = TrainL2tRl(cfg, 11, a);
  const TrainResult rb = TrainL2tRl(cfg, 11, b);
  const std::string log = ReadFile(a.output_dir / "metrics.jsonl");
  EXPECT_FALSE(log.empty());
  EXPECT_EQ(log, ReadFile(b.output_dir / "metrics.jsonl"));
  EXPECT_EQ(ReadFile(a.output_dir / "summary.json"),
            ReadFile(b.output_dir / "summary.json"));
  EXPECT_EQ(Flatten(ra.student.Save()), Flatten(rb.student.Save()));
  const TrainResult rc = TrainL2tRl(cfg, 12);
  EXPECT_NE(Flatten(rc.teacher.Save()), Flatten(ra.teacher.Save()));
}

TEST(TrainerTest, RunDirectoryHoldsAllArtifacts) {
  const ExperimentConfig cfg = TinyConfig();
  RunOptions opt;
  opt.output_dir = FreshDir("artifacts");
  TrainL2tRl(cfg, 2, opt);
  for (const char* name :
       {"metrics.jsonl", "summary.json", "config.ini", "run_info.json",
        "teacher.ckpt", "best_teacher.ckpt", "student.ckpt"}) {
    EXPECT_TRUE(fs::exists(opt.output_dir / name)) << name;
  }
  std::ifstream in(opt.output_dir / "metrics.jsonl");
  std::string line;
  int evals = 0, losses = 0, finals = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string type = j.at("type");
    evals += type == "eval";
    losses += type == "loss";
    finals += type == "final_eval";
    EXPECT_FALSE(j.contains("time"));
  }
  EXPECT_EQ(evals, 2);
  EXPECT_EQ(losses, cfg.total_steps - cfg.warmup_steps);
  EXPECT_GE(finals, 1);
  const auto summary =
      nlohmann::json::parse(ReadFile(opt.output_dir / "summary.json"));
  EXPECT_TRUE(summary.contains("best_student_return"));
  EXPECT_EQ(summary.at("student_env_steps"), 0);
}

TEST(TrainerTest, VariantLikeThePrimaryReproducesIt) {
  ExperimentConfig cfg = TinyConfig();
  RunOptions opt;
  opt.extra_students.push_back(
      {"twin", cfg.alpha, cfg.curriculum, cfg.student});
  StudentVariant other{"l2", 0.1, CurriculumShape::kConstant, cfg.student};
  other.config.loss_mode = StudentLossMode::kBcL2;
  opt.extra_students.push_back(other);
  const TrainResult with = TrainL2tRl(cfg, 5, opt);
  const TrainResult without = TrainL2tRl(cfg, 5);
  ASSERT_EQ(with.variants.size(), 2u);
  EXPECT_EQ(with.variants[0].name, "twin");
  EXPECT_EQ(Flatten(with.variants[0].agent.Save()), Flatten(with.student.Save()));
  EXPECT_EQ(with.variants[0].final_eval.returns, with.final_student->returns);
  EXPECT_NE(Flatten(with.variants[1].agent.Save()), Flatten(with.student.Save()));
  // Extra students change nothing else.
  EXPECT_EQ(Flatten(with.teacher.Save()), Flatten(without.teacher.Save()));
  EXPECT_EQ(Flatten(with.student.Save()), Flatten(without.student.Save()));
}

TEST(TrainerTest, IrlRequiresDemonstrations) {
  const ExperimentConfig cfg = TinyConfig();
  EXPECT_THROW(TrainL2tIrl(cfg, 1, ExpertBuffer(2, 1)), ContractError);
}

TEST(TrainerTest, IrlWithTheTrueRewardMatchesRl) {
  ExperimentConfig cfg = TinyConfig();
  const ExpertBuffer demos =
      GenerateOracleDemonstrations(MakeEnvSpec(cfg.env), 1, 4);
  RunOptions opt;
  opt.expose_true_reward = true;
  const TrainResult irl = TrainL2tIrl(cfg, 8, demos, opt);
  const TrainResult rl = TrainL2tRl(cfg, 8);
  EXPECT_EQ(Flatten(irl.teacher.Save()), Flatten(rl.teacher.Save()));
  EXPECT_EQ(Flatten(irl.student.Save()), Flatten(rl.student.Save()));
  EXPECT_EQ(irl.student_env_steps, 0u);
}

TEST(TrainerTest, IrlRunTrainsRewardModels) {
  ExperimentConfig cfg = TinyConfig();
  cfg.algorithm = Algorithm::kL2tIrl;
  const ExpertBuffer demos =
      GenerateOracleDemonstrations(MakeEnvSpec(cfg.env), 2, 4);
  const TrainResult r = TrainL2tIrl(cfg, 8, demos);
  ASSERT_TRUE(r.teacher_reward.has_value());
  ASSERT_TRUE(r.student_reward.has_value());
  EXPECT_EQ(r.student_env_steps, 0u);
  EXPECT_EQ(r.teacher_env_steps, static_cast<std::uint64_t>(cfg.total_steps));
  std::mt19937_64 init = MakeStream(8, "reward_init");
  const RewardModel fresh(2, 1, cfg.reward, init);
  const Matrix s = Matrix::Random(4, 2), a = Matrix::Random(4, 1);
  EXPECT_NE(r.teacher_reward->Estimate(s, a), fresh.Estimate(s, a));
}

TEST(TrainerTest, OracleDemonstrationsAreReproducible) {
  const EnvSpec spec = MakeEnvSpec(EnvName::kPendulum);
  std::vector<double> returns;
  const ExpertBuffer a = GenerateOracleDemonstrations(spec, 3, 12345, &returns);
  EXPECT_EQ(a, GenerateOracleDemonstrations(spec, 3, 12345));
  EXPECT_EQ(a.size(), 600u);
  EXPECT_EQ(a.episode_starts(), (std::vector<std::size_t>{0, 200, 400}));
  ASSERT_EQ(returns.size(), 3u);
  for (double r : returns) EXPECT_GT(r, -400.0);
}

TEST(TrainerTest, TwoStageBcChargesTheStudent) {
  const ExperimentConfig cfg = TinyConfig();
  const TrainResult stage1 = TrainL2tRl(cfg, 6);
  const std::uint64_t before = GlobalEnvStepCount();
  const BcResult bc = TrainTwoStageBc(cfg, 6, stage1.teacher);
  EXPECT_EQ(bc.teacher_env_steps, 0u);
  EXPECT_EQ(bc.student_env_steps, static_cast<std::uint64_t>(cfg.bc_steps));
  EXPECT_EQ(GlobalEnvStepCount() - before,
            bc.student_env_steps + bc.eval_env_steps);
  ASSERT_TRUE(bc.final_student.has_value());
}

TEST(TrainerTest, TwoStageBcWithZeroStepsIsUntrained) {
  ExperimentConfig cfg = TinyConfig();
  cfg.bc_steps = 0;
  const TrainResult stage1 = TrainL2tRl(cfg, 6);
  const BcResult bc = TrainTwoStageBc(cfg, 6, stage1.teacher);
  std::mt19937_64 s_init = MakeStream(6, "student_init");
  const StudentAgent fresh(MakeEnvSpec(cfg.env), cfg.student, s_init);
  EXPECT_EQ(Flatten(bc.student.Save()), Flatten(fresh.Save()));
  EXPECT_EQ(bc.student_env_steps, 0u);
}

TEST(TrainerTest, NumericBlowUpAbortsWithDiagnostics) {
  ExperimentConfig cfg = TinyConfig();
  cfg.teacher.critic_lr = 1e300;
  RunOptions opt;
  opt.output_dir = FreshDir("abort");
  EXPECT_THROW(TrainL2tRl(cfg, 1, opt), NumericError);
  std::ifstream in(opt.output_dir / "metrics.jsonl");
  std::string line, last;
  while (std::getline(in, line)) last = line;
  EXPECT_EQ(nlohmann::json::parse(last).at("type"), "abort");
  EXPECT_TRUE(fs::exists(opt.output_dir / "diagnostic.ckpt"));
}

TEST(MetricsTest, EmptyLogExportsHeaderOnly) {
  const fs::path in = test::TempPath("empty.jsonl");
  const fs::path out = test::TempPath("empty.csv");
  std::ofstream(in).close();
  EXPECT_EQ(ExportMetricsCsv(in, out), 0);
  EXPECT_EQ(ReadFile(out), "step,agent,metric,value\n");
}

TEST(MetricsTest, ExportSplitsAgentsAndMetrics) {
  const fs::path in = test::TempPath("small.jsonl");
  const fs::path out = test::TempPath("small.csv");
  {
    MetricsLog log(in);
    EvalRecord rec;
    rec.step = 500;
    rec.teacher_return_mean = -150.5;
    rec.student_return_mean = -200.25;
    auto j = ToJson(rec);
    j["type"] = "eval";
    log.Write(j);
    EXPECT_EQ(log.records_written(), 1);
  }
  EXPECT_GT(ExportMetricsCsv(in, out), 0);
  const std::string csv = ReadFile(out);
  EXPECT_NE(csv.find("500,teacher,return_mean,-150.5\n"), std::string::npos);
  EXPECT_NE(csv.find("500,student,return_mean,-200.25\n"), std::string::npos);
}

TEST(MetricsTest, MalformedLineReportsItsNumber) {
  const fs::path in = test::TempPath("bad.jsonl");
  {
    std::ofstream out(in);
    out << "{\"type\":\"eval\",\"step\":1}\n{not json\n";
  }
  try {
    ExportMetricsCsv(in, test::TempPath("bad.csv"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(MetricsTest, DisabledLogDiscards) {
  MetricsLog log;
  EXPECT_FALSE(log.enabled());
  log.Write({{"type", "eval"}});
  EXPECT_EQ(log.records_written(), 0);
}

}  // namespace
}  // namespace l2t
