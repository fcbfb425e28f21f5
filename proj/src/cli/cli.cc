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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "l2t/numcore/errors.h"
#include "l2t/orchestrator/config_io.h"
#include "l2t/orchestrator/evaluate.h"
#include "l2t/orchestrator/metrics.h"
#include "l2t/orchestrator/rng_streams.h"
#include "l2t/orchestrator/trainer.h"
#include "l2t/replay/demonstrations.h"

#ifndef L2T_VERSION
#define L2T_VERSION "unknown"
#endif

namespace l2t::cli {
namespace {

namespace fs = std::filesystem;

fs::path SeedDir(const fs::path& root, std::uint64_t seed) {
  return root / ("seed_" + std::to_string(seed));
}

RunOptions Options(const fs::path& dir) {
  RunOptions options;
  options.output_dir = dir;
  options.version = std::string(Version());
  return options;
}

ExpertBuffer LoadOrGenerateDemos(const ExperimentConfig& cfg,
                                 const fs::path& dir, std::ostream& out) {
  const EnvSpec spec = MakeEnvSpec(cfg.env);
  if (!cfg.demo_path.empty()) return LoadDemonstrations(cfg.demo_path, spec);
  std::vector<double> returns;
  ExpertBuffer demos =
      GenerateOracleDemonstrations(spec, cfg.demo_episodes, cfg.demo_seed, &returns);
  fs::create_directories(dir);
  SaveDemonstrations(dir / "demos.txt", demos);
  double mean = 0.0;
  for (double r : returns) mean += r;
  out << "generated " << cfg.demo_episodes << " oracle demo episodes, mean return "
      << mean / static_cast<double>(returns.size()) << "\n";
  return demos;
}

TeacherAgent FrozenTeacher(const ExperimentConfig& cfg, std::uint64_t seed,
                           const fs::path& dir, std::ostream& out) {
  if (!cfg.teacher_checkpoint.empty()) {
    std::mt19937_64 init = MakeStream(seed, "teacher_init");
    TeacherAgent teacher(MakeEnvSpec(cfg.env), cfg.teacher, init);
    teacher.Load(LoadCheckpoint(cfg.teacher_checkpoint));
    return teacher;
  }
  ExperimentConfig stage = cfg;
  stage.algorithm = Algorithm::kL2tRl;
  TrainResult first = TrainL2tRl(stage, seed, Options(dir / "teacher_stage"));
  out << "seed " << seed << ": teacher stage best return "
      << first.best_teacher_return << "\n";
  return first.best_teacher;
}

void Train(const ExperimentConfig& cfg, const fs::path& root,
           std::ostream& out) {
  for (std::uint64_t seed : cfg.seeds) {
    const fs::path dir = SeedDir(root, seed);
    switch (cfg.algorithm) {
      case Algorithm::kL2tRl: {
        TrainResult r = TrainL2tRl(cfg, seed, Options(dir));
        out << "seed " << seed << ": teacher " << r.best_teacher_return
            << " student " << r.best_student_return << " (best eval return), "
            << r.teacher_env_steps << " teacher env steps, "
            << r.student_env_steps << " student env steps\n";
        break;
      }
      case Algorithm::kL2tIrl: {
        const ExpertBuffer demos = LoadOrGenerateDemos(cfg, dir, out);
        TrainResult r = TrainL2tIrl(cfg, seed, demos, Options(dir));
        out << "seed " << seed << ": teacher " << r.best_teacher_return
            << " student " << r.best_student_return << " (best eval return)\n";
        break;
      }
      case Algorithm::kTwoStageBc: {
        const TeacherAgent teacher = FrozenTeacher(cfg, seed, dir, out);
        BcResult r = TrainTwoStageBc(cfg, seed, teacher, Options(dir));
        out << "seed " << seed << ": bc student " << r.best_student_return
            << " (best eval return), " << r.student_env_steps
            << " student env steps\n";
        break;
      }
    }
  }
}

void Eval(const CliCommand& cmd, const ExperimentConfig& cfg,
          const fs::path& root, std::ostream& out) {
  if (cmd.checkpoint.empty()) {
    throw ConfigError("checkpoint", "eval needs --checkpoint");
  }
  const EnvSpec spec = MakeEnvSpec(cfg.env);
  const NamedTensors tensors = LoadCheckpoint(cmd.checkpoint);
  const int episodes = cmd.episodes > 0 ? cmd.episodes : cfg.final_eval_episodes;
  const std::uint64_t seed = cfg.seeds.front();
  std::mt19937_64 init(0);
  EvalStats stats;
  double alpha = 0.0;
  if (cmd.agent == "teacher") {
    TeacherAgent teacher(spec, cfg.teacher, init);
    teacher.Load(tensors);
    stats = EvaluatePolicy(spec, teacher.policy(), 0.0, episodes,
                           StreamSeed(seed, "final_eval"));
  } else if (cmd.agent == "student") {
    StudentAgent student(spec, cfg.student, init);
    student.Load(tensors);
    alpha = cfg.alpha;
    stats = EvaluatePolicy(spec, student.policy(), alpha, episodes,
                           StreamSeed(seed, "final_eval"));
  } else {
    throw ConfigError("agent", "expected teacher or student, got '" +
                                   cmd.agent + "'");
  }
  const nlohmann::json record = {{"agent", cmd.agent},
                                 {"episodes", episodes},
                                 {"alpha", alpha},
                                 {"return_mean", stats.return_mean},
                                 {"return_std", stats.return_std},
                                 {"episode_length_mean", stats.length_mean},
                                 {"average_reward", stats.average_reward}};
  out << record.dump() << "\n";
  fs::create_directories(root);
  WriteJsonFile(root / "eval.json", record);
}

void Sweep(const ExperimentConfig& cfg, const fs::path& root,
           std::ostream& out) {
  std::vector<StudentVariant> variants;
  for (const std::string& value : cfg.sweep_values) {
    StudentVariant v;
    v.name = cfg.sweep_parameter + "_" + value;
    v.alpha = cfg.alpha;
    v.curriculum = cfg.curriculum;
    v.config = cfg.student;
    if (cfg.sweep_parameter == "alpha") {
      v.alpha = std::stod(value);
    } else {
      v.config.loss_mode = ParseStudentLossMode(value);
    }
    variants.push_back(v);
  }
  std::map<std::string, std::vector<double>> finals;
  for (std::uint64_t seed : cfg.seeds) {
    RunOptions options = Options(SeedDir(root, seed));
    options.extra_students = variants;
    TrainResult r = TrainL2tRl(cfg, seed, options);
    for (const VariantOutcome& v : r.variants) {
      finals[v.name].push_back(v.final_eval.return_mean);
    }
  }
  nlohmann::json report = {{"parameter", cfg.sweep_parameter}};
  std::vector<std::pair<double, double>> series;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const std::vector<double>& v = finals[variants[i].name];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
    out << cfg.sweep_parameter << "=" << cfg.sweep_values[i]
        << " mean final student return " << mean << "\n";
    report["values"].push_back(
        {{"value", cfg.sweep_values[i]}, {"mean_final_return", mean},
         {"final_returns", v}});
    if (cfg.sweep_parameter == "alpha") {
      series.emplace_back(variants[i].alpha, mean);
    }
  }
  if (cfg.sweep_parameter == "alpha" && series.size() >= 2) {
    const bool verdict = AblationVerdict(series);
    report["non_increasing_in_alpha"] = verdict;
    out << "verdict: student return "
        << (verdict ? "is" : "is NOT") << " non-increasing in alpha\n";
  } else {
    const double spread = hi - lo;
    report["spread"] = spread;
    out << "verdict: spread of mean final returns " << spread << "\n";
  }
  fs::create_directories(root);
  WriteJsonFile(root / "sweep.json", report);
}

void GenDemos(const CliCommand& cmd, const ExperimentConfig& cfg,
              const fs::path& root, std::ostream& out) {
  const EnvSpec spec = MakeEnvSpec(cfg.env);
  const int episodes = cmd.episodes > 0 ? cmd.episodes : cfg.demo_episodes;
  std::vector<double> returns;
  const ExpertBuffer demos =
      GenerateOracleDemonstrations(spec, episodes, cfg.demo_seed, &returns);
  fs::path path = cmd.demo_out;
  if (path.empty()) {
    fs::create_directories(root);
    path = root / "demos.txt";
  }
  SaveDemonstrations(path, demos);
  double mean = 0.0;
  for (double r : returns) mean += r;
  out << "wrote " << episodes << " episodes (" << demos.size()
      << " pairs) to " << path.string() << ", mean return "
      << mean / episodes << "\n";
}

}  // namespace

std::string_view Version() { return L2T_VERSION; }

std::string_view VerbString(Verb verb) {
  switch (verb) {
    case Verb::kTrain:
      return "train";
    case Verb::kEval:
      return "eval";
    case Verb::kSweep:
      return "sweep";
    case Verb::kExport:
      return "export";
    case Verb::kGenDemos:
      return "gen-demos";
  }
  return "unknown";
}

ExperimentConfig ParseConfig(const fs::path& path,
                             const std::vector<std::string>& overrides) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return ParseConfigText(text, overrides);
}

fs::path ResolveOutputDir(const CliCommand& cmd, const ExperimentConfig& cfg) {
  fs::path dir = cmd.output_dir;
  if (dir.empty()) {
    dir = std::string(AlgorithmString(cfg.algorithm)) + "_" +
          std::string(EnvNameString(cfg.env));
  }
  if (dir.is_relative()) {
    if (const char* root = std::getenv("L2T_OUTPUT_ROOT");
        root != nullptr && *root != '\0') {
      dir = fs::path(root) / dir;
    }
  }
  return dir;
}

int Run(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (cmd.verb == Verb::kExport) {
      if (cmd.metrics_path.empty() || cmd.csv_path.empty()) {
        throw ConfigError("export", "needs --metrics and --out");
      }
      const std::int64_t rows = ExportMetricsCsv(cmd.metrics_path, cmd.csv_path);
      out << "wrote " << rows << " rows to " << cmd.csv_path.string() << "\n";
      return kExitOk;
    }
    const ExperimentConfig cfg = ParseConfig(cmd.config_path, cmd.overrides);
    const fs::path root = ResolveOutputDir(cmd, cfg);
    switch (cmd.verb) {
      case Verb::kTrain:
        Train(cfg, root, out);
        break;
      case Verb::kEval:
        Eval(cmd, cfg, root, out);
        break;
      case Verb::kSweep:
        Sweep(cfg, root, out);
        break;
      case Verb::kGenDemos:
        GenDemos(cmd, cfg, root, out);
        break;
      case Verb::kExport:
        break;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Single-loop teacher-student reinforcement learning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(Version()));
  CliCommand cmd;

  auto add_common = [&cmd](CLI::App* sub) {
    sub->add_option("-c,--config", cmd.config_path, "Config file");
    sub->add_option("-s,--set", cmd.overrides, "Override as key=value")
        ->take_all();
    sub->add_option("-o,--output-dir", cmd.output_dir, "Output directory");
  };
  CLI::App* train = app.add_subcommand("train", "Train one experiment");
  add_common(train);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a saved checkpoint");
  add_common(eval);
  eval->add_option("--checkpoint", cmd.checkpoint, "Checkpoint file")
      ->required();
  eval->add_option("--agent", cmd.agent, "teacher or student");
  eval->add_option("--episodes", cmd.episodes, "Evaluation episodes");
  CLI::App* sweep = app.add_subcommand("sweep", "Ablation sweep");
  add_common(sweep);
  CLI::App* exp = app.add_subcommand("export", "Metrics log to CSV");
  exp->add_option("--metrics", cmd.metrics_path, "metrics.jsonl")->required();
  exp->add_option("--out", cmd.csv_path, "CSV output")->required();
  CLI::App* demos = app.add_subcommand("gen-demos", "Oracle demonstrations");
  add_common(demos);
  demos->add_option("--out", cmd.demo_out, "Demo file");
  demos->add_option("--episodes", cmd.episodes, "Episodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  if (train->parsed()) cmd.verb = Verb::kTrain;
  if (eval->parsed()) cmd.verb = Verb::kEval;
  if (sweep->parsed()) cmd.verb = Verb::kSweep;
  if (exp->parsed()) cmd.verb = Verb::kExport;
  if (demos->parsed()) cmd.verb = Verb::kGenDemos;
  return Run(cmd, std::cout, std::cerr);
}

}  // namespace l2t::cli
