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

#include "l2t/cli/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "l2t/orchestrator/config_io.h"
#include "l2t/replay/demonstrations.h"

namespace l2t::cli {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("l2t_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> TinyOverrides() {
  return {"total_steps=600",     "warmup_steps=100", "eval_interval=300",
          "eval_episodes=1",     "final_eval_episodes=2",
          "batch_size=32",       "teacher.hidden=16,16",
          "student.hidden=16,16"};
}

std::string Key(const std::vector<std::string>& overrides,
                const fs::path& path = {}) {
  try {
    ParseConfig(path, overrides);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

TEST(ParseConfigTest, EmptyInputGivesDefaults) {
  EXPECT_EQ(ParseConfig({}, {}), ExperimentConfig{});
}

TEST(ParseConfigTest, OverridesApply) {
  const ExperimentConfig cfg =
      ParseConfig({}, {"alpha=0.2", "teacher.hidden=32,32", "seeds=1,2,3"});
  EXPECT_DOUBLE_EQ(cfg.alpha, 0.2);
  EXPECT_EQ(cfg.teacher.hidden, (std::vector<int>{32, 32}));
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(ParseConfig({}, {"noise.alpha=0.2"}).alpha, 0.2);
}

TEST(ParseConfigTest, FileThenOverrides) {
  const fs::path dir = TempDir("file");
  std::ofstream(dir / "c.ini") << "# comment\n[noise]\nalpha = 0.3\n"
                               << "[experiment]\ntotal_steps = 5000\n";
  const ExperimentConfig cfg = ParseConfig(dir / "c.ini", {"alpha=0.1"});
  EXPECT_DOUBLE_EQ(cfg.alpha, 0.1);
  EXPECT_EQ(cfg.total_steps, 5000);
}

TEST(ParseConfigTest, ErrorsNameTheKey) {
  EXPECT_EQ(Key({"alpha=-1"}), "noise.alpha");
  EXPECT_EQ(Key({"teacher.gamma=1.5"}), "teacher.gamma");
  EXPECT_EQ(Key({"experiment.batch_size=many"}), "experiment.batch_size");
  EXPECT_EQ(Key({"teacher.nonsense=1"}), "teacher.nonsense");
  EXPECT_EQ(Key({"no_equals_sign"}), "no_equals_sign");
  EXPECT_EQ(Key({}, "/nonexistent/l2t.ini"), "config");
  // Defined in several sections.
  EXPECT_FALSE(Key({"hidden=8"}).empty());
}

TEST(ParseConfigTest, EchoIsAFixedPoint) {
  const ExperimentConfig cfg = ParseConfig(
      {}, {"alpha=0.1234567890123", "student.loss_mode=kl", "seeds=4,5",
           "teacher.actor_lr=0.0001", "curriculum=constant"});
  const std::string text = ConfigToText(cfg);
  EXPECT_EQ(ParseConfigText(text), cfg);
  EXPECT_EQ(ConfigToText(ParseConfigText(text)), text);
  for (const std::string& key : ConfigKeys()) {
    const std::string leaf = key.substr(key.find('.') + 1);
    EXPECT_NE(text.find(leaf + " ="), std::string::npos) << key;
  }
}

TEST(ResolveOutputDirTest, DefaultAndEnvironmentRoot) {
  CliCommand cmd;
  ExperimentConfig cfg;
  unsetenv("L2T_OUTPUT_ROOT");
  EXPECT_EQ(ResolveOutputDir(cmd, cfg), fs::path("l2t_rl_pendulum"));
  setenv("L2T_OUTPUT_ROOT", "/tmp/root", 1);
  EXPECT_EQ(ResolveOutputDir(cmd, cfg), fs::path("/tmp/root/l2t_rl_pendulum"));
  cmd.output_dir = "/abs/dir";
  EXPECT_EQ(ResolveOutputDir(cmd, cfg), fs::path("/abs/dir"));
  cmd.output_dir = "rel";
  EXPECT_EQ(ResolveOutputDir(cmd, cfg), fs::path("/tmp/root/rel"));
  unsetenv("L2T_OUTPUT_ROOT");
}

TEST(RunTest, TrainWritesArtifacts) {
  const fs::path dir = TempDir("train");
  CliCommand cmd;
  cmd.overrides = TinyOverrides();
  cmd.output_dir = dir;
  std::ostringstream out, err;
  ASSERT_EQ(cli::Run(cmd, out, err), kExitOk) << err.str();
  for (const char* name : {"metrics.jsonl", "summary.json", "config.ini",
                           "run_info.json", "teacher.ckpt", "student.ckpt"}) {
    EXPECT_TRUE(fs::exists(dir / "seed_1" / name)) << name;
  }
  EXPECT_NE(out.str().find("seed 1"), std::string::npos);

  // The saved student evaluates through the eval verb.
  CliCommand eval;
  eval.verb = Verb::kEval;
  eval.overrides = TinyOverrides();
  eval.output_dir = dir / "eval";
  eval.checkpoint = dir / "seed_1" / "student.ckpt";
  eval.episodes = 2;
  ASSERT_EQ(cli::Run(eval, out, err), kExitOk) << err.str();
  std::ifstream json(dir / "eval" / "eval.json");
  std::stringstream text;
  text << json.rdbuf();
  EXPECT_NE(text.str().find("\"episodes\": 2"), std::string::npos);

  eval.agent = "nobody";
  EXPECT_EQ(cli::Run(eval, out, err), kExitConfigError);

  // Export the metrics log.
  CliCommand exp;
  exp.verb = Verb::kExport;
  exp.metrics_path = dir / "seed_1" / "metrics.jsonl";
  exp.csv_path = dir / "metrics.csv";
  ASSERT_EQ(cli::Run(exp, out, err), kExitOk) << err.str();
  std::ifstream csv(exp.csv_path);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "step,agent,metric,value");
}

TEST(RunTest, ExitCodes) {
  std::ostringstream out, err;
  CliCommand bad;
  bad.overrides = {"alpha=-1"};
  EXPECT_EQ(cli::Run(bad, out, err), kExitConfigError);
  EXPECT_NE(err.str().find("noise.alpha"), std::string::npos);

  CliCommand missing;
  missing.verb = Verb::kEval;
  missing.output_dir = TempDir("missing");
  EXPECT_EQ(cli::Run(missing, out, err), kExitConfigError);

  CliCommand nan;
  nan.overrides = TinyOverrides();
  nan.overrides.push_back("teacher.critic_lr=1e300");
  nan.output_dir = TempDir("nan");
  err.str("");
  EXPECT_EQ(cli::Run(nan, out, err), kExitRuntimeError);
  EXPECT_FALSE(err.str().empty());
}

TEST(RunTest, ExportOfEmptyLogWritesHeaderOnly) {
  const fs::path dir = TempDir("export");
  std::ofstream(dir / "empty.jsonl").close();
  CliCommand cmd;
  cmd.verb = Verb::kExport;
  cmd.metrics_path = dir / "empty.jsonl";
  cmd.csv_path = dir / "out.csv";
  std::ostringstream out, err;
  ASSERT_EQ(cli::Run(cmd, out, err), kExitOk);
  std::ifstream csv(cmd.csv_path);
  std::stringstream text;
  text << csv.rdbuf();
  EXPECT_EQ(text.str(), "step,agent,metric,value\n");

  cmd.metrics_path = dir / "absent.jsonl";
  EXPECT_NE(cli::Run(cmd, out, err), kExitOk);
}

TEST(RunTest, GenDemosIsLoadable) {
  const fs::path dir = TempDir("demos");
  CliCommand cmd;
  cmd.verb = Verb::kGenDemos;
  cmd.demo_out = dir / "d.txt";
  cmd.episodes = 2;
  std::ostringstream out, err;
  ASSERT_EQ(cli::Run(cmd, out, err), kExitOk) << err.str();
  const ExpertBuffer demos =
      LoadDemonstrations(cmd.demo_out, MakeEnvSpec(EnvName::kPendulum));
  EXPECT_EQ(demos.size(), 400u);
}

TEST(MainTest, ParsesArgv) {
  const fs::path dir = TempDir("main");
  const std::string out = (dir / "d.txt").string();
  std::vector<std::string> args = {"l2t", "gen-demos", "--episodes", "1",
                                   "--out", out};
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  EXPECT_EQ(Main(static_cast<int>(argv.size()), argv.data()), kExitOk);
  EXPECT_TRUE(fs::exists(out));

  std::vector<std::string> bad = {"l2t", "train", "--set", "alpha=-1",
                                  "-o", (dir / "x").string()};
  argv.clear();
  for (std::string& a : bad) argv.push_back(a.data());
  EXPECT_EQ(Main(static_cast<int>(argv.size()), argv.data()), kExitConfigError);

  std::vector<std::string> none = {"l2t"};
  argv = {none[0].data()};
  EXPECT_EQ(Main(1, argv.data()), kExitConfigError);
  EXPECT_FALSE(Version().empty());
}

}  // namespace
}  // namespace l2t::cli
