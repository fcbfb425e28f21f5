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

#include "l2t/orchestrator/trainer.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <utility>

#include "l2t/envs/oracle.h"
#include "l2t/numcore/errors.h"
#include "l2t/orchestrator/config_io.h"
#include "l2t/orchestrator/rng_streams.h"
#include "l2t/replay/replay_buffer.h"

namespace l2t {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Vector UniformAction(const EnvSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(spec.action_low, spec.action_high);
  Vector a(spec.action_dim);
  for (int i = 0; i < spec.action_dim; ++i) a[i] = u(rng);
  return a;
}

// Stored rows of a per-track ring, indexed by push number mod ring size.
template <typename T>
std::vector<T> RingRows(const std::vector<T>& ring, std::int64_t first_push,
                        const std::vector<std::size_t>& indices) {
  const auto size = static_cast<std::int64_t>(ring.size());
  std::vector<T> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    out.push_back(ring[(first_push + static_cast<std::int64_t>(i)) % size]);
  }
  return out;
}

// Replaces the rows whose observation was generated at a noise scale other
// than `alpha_now` with a fresh observation of the stored state at
// `alpha_now`. This is how a growing curriculum reaches data collected
// earlier in the ramp.
void RenoiseStale(const Matrix& states, const std::vector<double>& stored_alpha,
                  double alpha_now, std::mt19937_64& rng, Matrix& obs) {
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    if (stored_alpha[static_cast<std::size_t>(i)] == alpha_now) continue;
    obs.row(i) = Observe(states.row(i).transpose(), alpha_now, rng).transpose();
  }
}

std::vector<double> ColumnValues(const Matrix& column) {
  return std::vector<double>(column.data(), column.data() + column.size());
}

// One student trained from the shared buffer.
struct StudentTrack {
  std::string name;
  bool primary = false;
  double alpha_target = 0.0;
  CurriculumSchedule schedule;
  StudentAgent agent;
  std::mt19937_64 noise_rng;
  std::mt19937_64 update_rng;
  // Observations of non-primary tracks and the noise scale each was drawn
  // at, indexed by push number mod size. The primary track keeps both in
  // the replay buffer itself.
  std::vector<Vector> observations;
  std::vector<double> observation_alpha;
  double best_return = kNegInf;
};

// Supplies critic rewards for a minibatch and adapts after each update.
class RewardSource {
 public:
  virtual ~RewardSource() = default;
  virtual Matrix Rewards(const Batch& batch, const Matrix& actions) = 0;
  // Called once per iteration after the agents' updates.
  virtual void Adapt(const Batch& batch, const Matrix& actions,
                     const TeacherAgent& teacher, nlohmann::json* record) = 0;
};

class EnvReward : public RewardSource {
 public:
  Matrix Rewards(const Batch& batch, const Matrix&) override {
    return batch.r;
  }
  void Adapt(const Batch&, const Matrix&, const TeacherAgent&,
             nlohmann::json*) override {}
};

class LearnedReward : public RewardSource {
 public:
  LearnedReward(const EnvSpec& spec, const RewardModelConfig& config,
                const ExpertBuffer& demos, std::uint64_t seed, int batch_size)
      : spec_(spec), demos_(demos), batch_size_(batch_size) {
    std::mt19937_64 init = MakeStream(seed, "reward_init");
    teacher_ = RewardModel(spec.state_dim, spec.action_dim, config, init);
    // Identical initialization for both reward models.
    student_ = teacher_;
    expert_rng_ = MakeStream(seed, "expert_sample");
    entropy_rng_ = MakeStream(seed, "entropy_estimate");
  }

  Matrix Rewards(const Batch& batch, const Matrix& actions) override {
    return teacher_.Estimate(batch.s, actions);
  }

  void Adapt(const Batch& batch, const Matrix& actions,
             const TeacherAgent& teacher, nlohmann::json* record) override {
    Matrix expert_states, expert_env_actions;
    demos_.Sample(batch_size_, expert_rng_, expert_states, expert_env_actions);
    const Matrix expert_actions = NormalizeActions(spec_, expert_env_actions);
    const double entropy =
        -teacher.policy().Sample(batch.s, entropy_rng_).log_prob.mean();
    const double teacher_objective =
        TeacherRewardUpdate(teacher_, expert_states, expert_actions, batch.s,
                            actions, entropy);
    const double student_objective = StudentRewardUpdate(
        student_, expert_states, expert_actions, batch.o, actions);
    if (record != nullptr) {
      (*record)["teacher_reward_objective"] = teacher_objective;
      (*record)["student_reward_objective"] = student_objective;
    }
  }

  const RewardModel& teacher_model() const { return teacher_; }
  const RewardModel& student_model() const { return student_; }

 private:
  EnvSpec spec_;
  const ExpertBuffer& demos_;
  int batch_size_;
  RewardModel teacher_;
  RewardModel student_;
  std::mt19937_64 expert_rng_;
  std::mt19937_64 entropy_rng_;
};

void WriteRunInfo(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                  std::uint64_t seed, const std::string& version) {
  std::filesystem::create_directories(dir);
  std::ofstream echo(dir / "config.ini", std::ios::out | std::ios::trunc);
  echo << ConfigToText(cfg);
  WriteJsonFile(dir / "run_info.json",
                {{"version", version},
                 {"seed", seed},
                 {"algorithm", AlgorithmString(cfg.algorithm)},
                 {"env", EnvNameString(cfg.env)}});
}

std::vector<StudentTrack> MakeTracks(const EnvSpec& spec,
                                     const ExperimentConfig& cfg,
                                     std::uint64_t seed,
                                     const std::vector<StudentVariant>& extra) {
  std::vector<StudentVariant> variants;
  variants.push_back({"student", cfg.alpha, cfg.curriculum, cfg.student});
  variants.insert(variants.end(), extra.begin(), extra.end());
  std::vector<StudentTrack> tracks;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const StudentVariant& v = variants[i];
    StudentTrack track;
    track.name = v.name;
    track.primary = i == 0;
    track.alpha_target = v.alpha;
    track.schedule = MakeCurriculum(v.curriculum, v.alpha,
                                    cfg.curriculum_fraction, cfg.total_steps);
    std::mt19937_64 init = MakeStream(seed, "student_init");
    track.agent = StudentAgent(spec, v.config, init);
    track.noise_rng = MakeStream(seed, "observation_noise");
    track.update_rng = MakeStream(seed, "student_update");
    if (!track.primary) {
      const auto ring = static_cast<std::size_t>(std::max<std::int64_t>(
          1, std::min(cfg.buffer_capacity, cfg.total_steps)));
      track.observations.resize(ring);
      track.observation_alpha.resize(ring);
    }
    tracks.push_back(std::move(track));
  }
  return tracks;
}

TrainResult RunSingleLoop(const ExperimentConfig& cfg, std::uint64_t seed,
                          const RunOptions& options,
                          const ExpertBuffer* demos) {
  ValidateConfig(cfg);
  const EnvSpec spec = MakeEnvSpec(cfg.env);
  const bool learned_reward = demos != nullptr && !options.expose_true_reward;
  const bool write_files = !options.output_dir.empty();
  if (write_files) WriteRunInfo(options.output_dir, cfg, seed, options.version);
  MetricsLog log = write_files ? MetricsLog(options.output_dir / "metrics.jsonl")
                               : MetricsLog();

  TrainResult result;
  {
    std::mt19937_64 init = MakeStream(seed, "teacher_init");
    result.teacher = TeacherAgent(spec, cfg.teacher, init);
  }
  result.best_teacher = result.teacher;
  result.best_teacher_return = kNegInf;
  result.best_student_return = kNegInf;
  std::vector<StudentTrack> tracks =
      MakeTracks(spec, cfg, seed, options.extra_students);

  std::unique_ptr<RewardSource> reward;
  LearnedReward* learned = nullptr;
  if (learned_reward) {
    auto owned = std::make_unique<LearnedReward>(spec, cfg.reward, *demos, seed,
                                                 cfg.batch_size);
    learned = owned.get();
    reward = std::move(owned);
  } else {
    reward = std::make_unique<EnvReward>();
  }

  std::mt19937_64 reset_rng = MakeStream(seed, "env_reset");
  std::mt19937_64 action_rng = MakeStream(seed, "action");
  std::mt19937_64 sample_rng = MakeStream(seed, "minibatch");
  std::mt19937_64 teacher_rng = MakeStream(seed, "teacher_update");
  const std::uint64_t eval_seed = StreamSeed(seed, "eval");

  ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity),
                      spec.action_low, spec.action_high);
  std::int64_t pushes = 0;
  EnvState state = Reset(spec, reset_rng);
  StudentTrack& primary = tracks.front();

  auto checkpoint_all = [&](const std::filesystem::path& path) {
    NamedTensors tensors = result.teacher.Save();
    for (StudentTrack& t : tracks) {
      NamedTensors s = t.agent.Save();
      for (auto& [name, tensor] : s) {
        tensors.emplace_back(t.primary ? name : t.name + "." + name,
                             std::move(tensor));
      }
    }
    if (learned != nullptr) {
      learned->teacher_model().AppendTo(tensors, "reward.teacher.");
      learned->student_model().AppendTo(tensors, "reward.student.");
    }
    SaveCheckpoint(path, tensors);
  };

  auto evaluate = [&](std::int64_t step, double alpha_now) {
    const EvalStats t = EvaluatePolicy(spec, result.teacher.policy(), 0.0,
                                       cfg.eval_episodes, eval_seed);
    const EvalStats s = EvaluatePolicy(spec, primary.agent.policy(),
                                       primary.alpha_target, cfg.eval_episodes,
                                       eval_seed);
    result.eval_env_steps += static_cast<std::uint64_t>(
        (t.length_mean + s.length_mean) * cfg.eval_episodes + 0.5);
    EvalRecord record;
    record.step = step;
    record.teacher_return_mean = t.return_mean;
    record.teacher_return_std = t.return_std;
    record.student_return_mean = s.return_mean;
    record.student_return_std = s.return_std;
    record.episode_length_mean = t.length_mean;
    record.alpha_current = alpha_now;
    record.alpha_eval = primary.alpha_target;
    record.teacher_average_reward = t.average_reward;
    result.evals.push_back(record);
    nlohmann::json j = ToJson(record);
    j["type"] = "eval";
    j["teacher_env_steps"] = result.teacher_env_steps;
    j["student_env_steps"] = result.student_env_steps;
    log.Write(j);
    if (t.return_mean > result.best_teacher_return) {
      result.best_teacher_return = t.return_mean;
      result.best_teacher = result.teacher;
    }
    primary.best_return = std::max(primary.best_return, s.return_mean);
    for (std::size_t i = 1; i < tracks.size(); ++i) {
      StudentTrack& track = tracks[i];
      const EvalStats v = EvaluatePolicy(spec, track.agent.policy(),
                                         track.alpha_target, cfg.eval_episodes,
                                         eval_seed);
      result.eval_env_steps += static_cast<std::uint64_t>(
          v.length_mean * cfg.eval_episodes + 0.5);
      track.best_return = std::max(track.best_return, v.return_mean);
      log.Write({{"type", "eval_aux"},
                 {"step", step},
                 {"agent", track.name},
                 {"return_mean", v.return_mean},
                 {"return_std", v.return_std},
                 {"alpha_eval", track.alpha_target},
                 {"alpha_current", CurriculumAlpha(track.schedule, step)}});
    }
  };

  std::int64_t k = 0;
  try {
    for (; k < cfg.total_steps; ++k) {
      const double alpha_k = CurriculumAlpha(primary.schedule, k);
      const Vector action = k < cfg.warmup_steps
                                ? UniformAction(spec, action_rng)
                                : result.teacher.Act(state.s, false, action_rng);
      StepResult step = Step(spec, state, action);
      ++result.teacher_env_steps;

      Transition tr;
      tr.s = state.s;
      tr.o = Observe(state.s, alpha_k, primary.noise_rng);
      tr.a = action;
      tr.r = step.reward;
      tr.s_next = step.next.s;
      tr.o_next = Observe(step.next.s, alpha_k, primary.noise_rng);
      tr.done = step.next.terminal;
      tr.alpha_at_collection = alpha_k;
      for (std::size_t i = 1; i < tracks.size(); ++i) {
        StudentTrack& track = tracks[i];
        const double alpha_v = CurriculumAlpha(track.schedule, k);
        Vector o = Observe(state.s, alpha_v, track.noise_rng);
        // Drawn and discarded to keep the noise stream aligned with the
        // primary track's.
        Observe(step.next.s, alpha_v, track.noise_rng);
        const std::size_t slot = pushes % track.observations.size();
        track.observations[slot] = std::move(o);
        track.observation_alpha[slot] = alpha_v;
      }
      buffer.Push(std::move(tr));
      ++pushes;
      state = step.next.done ? Reset(spec, reset_rng) : std::move(step.next);

      if (k >= cfg.warmup_steps) {
        const std::vector<std::size_t> idx =
            buffer.SampleIndices(cfg.batch_size, sample_rng);
        const Batch batch = buffer.Gather(idx);
        const Matrix actions = NormalizeActions(spec, batch.a);
        const Matrix rewards = reward->Rewards(batch, actions);
        const double critic_loss = result.teacher.CriticUpdate(
            batch.s, actions, rewards, batch.s_next, batch.done, teacher_rng);
        const double actor_loss =
            result.teacher.ActorUpdate(batch.s, teacher_rng);
        result.teacher.PolyakUpdate();
        StudentLossReport primary_loss;
        const std::int64_t first_push =
            pushes - static_cast<std::int64_t>(buffer.size());
        for (StudentTrack& track : tracks) {
          Matrix obs;
          std::vector<double> obs_alpha;
          if (track.primary) {
            obs = batch.o;
            obs_alpha = ColumnValues(batch.alpha_at_collection);
          } else {
            const std::vector<Vector> rows =
                RingRows(track.observations, first_push, idx);
            obs.resize(batch.size(), spec.obs_dim);
            for (int i = 0; i < batch.size(); ++i) {
              obs.row(i) = rows[static_cast<std::size_t>(i)].transpose();
            }
            obs_alpha = RingRows(track.observation_alpha, first_push, idx);
          }
          RenoiseStale(batch.s, obs_alpha, CurriculumAlpha(track.schedule, k),
                       track.noise_rng, obs);
          StudentLossReport r = track.agent.Update(result.teacher, batch.s,
                                                   obs, track.update_rng);
          if (track.primary) primary_loss = r;
        }
        ++result.updates;
        const bool log_loss = result.updates % cfg.loss_log_interval == 0;
        nlohmann::json record;
        reward->Adapt(batch, actions, result.teacher,
                      log_loss ? &record : nullptr);
        if (log_loss) {
          record["type"] = "loss";
          record["step"] = k + 1;
          record["teacher_critic_loss"] = critic_loss;
          record["teacher_actor_loss"] = actor_loss;
          record["student_loss"] = primary_loss.total;
          record["student_bc_loss"] = primary_loss.bc_component;
          record["student_asym_loss"] = primary_loss.asym_component;
          log.Write(record);
        }
      }
      if ((k + 1) % cfg.eval_interval == 0) evaluate(k + 1, alpha_k);
    }
  } catch (const NumericError& e) {
    log.Write({{"type", "abort"}, {"step", k + 1}, {"reason", e.what()}});
    if (write_files) checkpoint_all(options.output_dir / "diagnostic.ckpt");
    throw;
  }

  if (cfg.total_steps > 0) {
    const std::uint64_t final_seed = StreamSeed(seed, "final_eval");
    result.final_teacher = EvaluatePolicy(spec, result.teacher.policy(), 0.0,
                                          cfg.final_eval_episodes, final_seed);
    result.final_student =
        EvaluatePolicy(spec, primary.agent.policy(), primary.alpha_target,
                       cfg.final_eval_episodes, final_seed);
    result.eval_env_steps += static_cast<std::uint64_t>(
        (result.final_teacher->length_mean + result.final_student->length_mean) *
            cfg.final_eval_episodes +
        0.5);
    nlohmann::json j = {
        {"type", "final_eval"},
        {"step", cfg.total_steps},
        {"teacher_return_mean", result.final_teacher->return_mean},
        {"teacher_return_std", result.final_teacher->return_std},
        {"student_return_mean", result.final_student->return_mean},
        {"student_return_std", result.final_student->return_std},
        {"teacher_env_steps", result.teacher_env_steps},
        {"student_env_steps", result.student_env_steps}};
    log.Write(j);
  }
  if (result.evals.empty()) {
    result.best_teacher = result.teacher;
    result.best_teacher_return =
        result.final_teacher ? result.final_teacher->return_mean : 0.0;
  }

  result.student = primary.agent;
  result.best_student_return = primary.best_return;
  if (result.best_student_return == kNegInf) {
    result.best_student_return =
        result.final_student ? result.final_student->return_mean : 0.0;
  }
  for (std::size_t i = 1; i < tracks.size(); ++i) {
    StudentTrack& track = tracks[i];
    VariantOutcome out;
    out.name = track.name;
    out.alpha = track.alpha_target;
    out.agent = track.agent;
    if (cfg.total_steps > 0) {
      out.final_eval = EvaluatePolicy(spec, track.agent.policy(),
                                      track.alpha_target,
                                      cfg.final_eval_episodes,
                                      StreamSeed(seed, "final_eval"));
      result.eval_env_steps += static_cast<std::uint64_t>(
          out.final_eval.length_mean * cfg.final_eval_episodes + 0.5);
      log.Write({{"type", "final_eval"},
                 {"step", cfg.total_steps},
                 {"agent", track.name},
                 {"return_mean", out.final_eval.return_mean},
                 {"return_std", out.final_eval.return_std}});
    }
    out.best_return = track.best_return == kNegInf ? out.final_eval.return_mean
                                                   : track.best_return;
    result.variants.push_back(std::move(out));
  }
  if (learned != nullptr) {
    result.teacher_reward = learned->teacher_model();
    result.student_reward = learned->student_model();
  }

  if (write_files) {
    SaveCheckpoint(options.output_dir / "teacher.ckpt", result.teacher.Save());
    SaveCheckpoint(options.output_dir / "best_teacher.ckpt",
                   result.best_teacher.Save());
    SaveCheckpoint(options.output_dir / "student.ckpt", result.student.Save());
    if (learned != nullptr) {
      NamedTensors tensors;
      learned->teacher_model().AppendTo(tensors, "reward.teacher.");
      learned->student_model().AppendTo(tensors, "reward.student.");
      SaveCheckpoint(options.output_dir / "reward.ckpt", tensors);
    }
    nlohmann::json summary = {
        {"algorithm", AlgorithmString(cfg.algorithm)},
        {"seed", seed},
        {"total_steps", cfg.total_steps},
        {"updates", result.updates},
        {"teacher_env_steps", result.teacher_env_steps},
        {"student_env_steps", result.student_env_steps},
        {"best_teacher_return", result.best_teacher_return},
        {"best_student_return", result.best_student_return}};
    if (result.final_teacher) {
      summary["final_teacher_return"] = result.final_teacher->return_mean;
      summary["final_student_return"] = result.final_student->return_mean;
    }
    for (const VariantOutcome& v : result.variants) {
      summary["variants"][v.name] = {{"alpha", v.alpha},
                                     {"best_return", v.best_return},
                                     {"final_return", v.final_eval.return_mean}};
    }
    WriteJsonFile(options.output_dir / "summary.json", summary);
  }
  return result;
}

}  // namespace

TrainResult TrainL2tRl(const ExperimentConfig& cfg, std::uint64_t seed,
                       const RunOptions& options) {
  return RunSingleLoop(cfg, seed, options, nullptr);
}

TrainResult TrainL2tIrl(const ExperimentConfig& cfg, std::uint64_t seed,
                        const ExpertBuffer& demos, const RunOptions& options) {
  if (demos.empty()) throw ContractError("L2T-IRL needs a nonempty demo buffer");
  const EnvSpec spec = MakeEnvSpec(cfg.env);
  if (demos.state_dim() != spec.state_dim ||
      demos.action_dim() != spec.action_dim) {
    throw DimensionError("demonstrations do not match the environment");
  }
  return RunSingleLoop(cfg, seed, options, &demos);
}

BcResult TrainTwoStageBc(const ExperimentConfig& cfg, std::uint64_t seed,
                         const TeacherAgent& frozen_teacher,
                         const RunOptions& options) {
  ValidateConfig(cfg);
  const EnvSpec spec = MakeEnvSpec(cfg.env);
  if (frozen_teacher.spec().state_dim != spec.state_dim ||
      frozen_teacher.spec().action_dim != spec.action_dim) {
    throw DimensionError("frozen teacher does not match the environment");
  }
  const bool write_files = !options.output_dir.empty();
  if (write_files) WriteRunInfo(options.output_dir, cfg, seed, options.version);
  MetricsLog log = write_files ? MetricsLog(options.output_dir / "metrics.jsonl")
                               : MetricsLog();

  // Student::Update takes a mutable teacher; BC never modifies it.
  TeacherAgent teacher = frozen_teacher;
  StudentConfig student_config = cfg.student;
  student_config.loss_mode =
      cfg.bc_p == 1 ? StudentLossMode::kBcL1 : StudentLossMode::kBcL2;

  BcResult result;
  {
    std::mt19937_64 init = MakeStream(seed, "student_init");
    result.student = StudentAgent(spec, student_config, init);
  }
  result.best_student_return = kNegInf;
  const CurriculumSchedule schedule = MakeCurriculum(
      cfg.curriculum, cfg.alpha, cfg.curriculum_fraction, cfg.bc_steps);
  std::mt19937_64 reset_rng = MakeStream(seed, "bc_env_reset");
  std::mt19937_64 action_rng = MakeStream(seed, "bc_action");
  std::mt19937_64 noise_rng = MakeStream(seed, "bc_observation_noise");
  std::mt19937_64 sample_rng = MakeStream(seed, "bc_minibatch");
  std::mt19937_64 update_rng = MakeStream(seed, "bc_student_update");
  const std::uint64_t eval_seed = StreamSeed(seed, "eval");

  EvalStats teacher_eval;
  const bool evaluates = cfg.bc_steps >= cfg.eval_interval;
  if (evaluates) {
    teacher_eval = EvaluatePolicy(spec, teacher.policy(), 0.0,
                                  cfg.eval_episodes, eval_seed);
    result.eval_env_steps += static_cast<std::uint64_t>(
        teacher_eval.length_mean * cfg.eval_episodes + 0.5);
  }

  ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity),
                      spec.action_low, spec.action_high);
  EnvState state = Reset(spec, reset_rng);
  std::int64_t updates = 0;
  for (std::int64_t k = 0; k < cfg.bc_steps; ++k) {
    const double alpha_k = CurriculumAlpha(schedule, k);
    Vector obs = Observe(state.s, alpha_k, noise_rng);
    const Vector action = result.student.Act(obs, false, action_rng);
    StepResult step = Step(spec, state, action);
    ++result.student_env_steps;
    Transition tr;
    tr.s = state.s;
    tr.o = std::move(obs);
    tr.a = action;
    tr.r = step.reward;
    tr.s_next = step.next.s;
    tr.o_next = Observe(step.next.s, alpha_k, noise_rng);
    tr.done = step.next.terminal;
    tr.alpha_at_collection = alpha_k;
    buffer.Push(std::move(tr));
    state = step.next.done ? Reset(spec, reset_rng) : std::move(step.next);

    if (static_cast<std::int64_t>(buffer.size()) >= cfg.batch_size) {
      const Batch batch =
          buffer.Gather(buffer.SampleIndices(cfg.batch_size, sample_rng));
      Matrix obs = batch.o;
      RenoiseStale(batch.s, ColumnValues(batch.alpha_at_collection), alpha_k,
                   noise_rng, obs);
      const StudentLossReport r =
          result.student.Update(teacher, batch.s, obs, update_rng);
      ++updates;
      if (updates % cfg.loss_log_interval == 0) {
        log.Write({{"type", "loss"},
                   {"step", k + 1},
                   {"student_loss", r.total},
                   {"student_bc_loss", r.bc_component}});
      }
    }
    if ((k + 1) % cfg.eval_interval == 0) {
      const EvalStats s = EvaluatePolicy(spec, result.student.policy(),
                                         cfg.alpha, cfg.eval_episodes,
                                         eval_seed);
      result.eval_env_steps += static_cast<std::uint64_t>(
          s.length_mean * cfg.eval_episodes + 0.5);
      EvalRecord record;
      record.step = k + 1;
      record.teacher_return_mean = teacher_eval.return_mean;
      record.teacher_return_std = teacher_eval.return_std;
      record.student_return_mean = s.return_mean;
      record.student_return_std = s.return_std;
      record.episode_length_mean = s.length_mean;
      record.alpha_current = alpha_k;
      record.alpha_eval = cfg.alpha;
      record.teacher_average_reward = teacher_eval.average_reward;
      result.evals.push_back(record);
      nlohmann::json j = ToJson(record);
      j["type"] = "eval";
      j["teacher_env_steps"] = result.teacher_env_steps;
      j["student_env_steps"] = result.student_env_steps;
      log.Write(j);
      result.best_student_return =
          std::max(result.best_student_return, s.return_mean);
    }
  }
  if (cfg.bc_steps > 0) {
    result.final_student =
        EvaluatePolicy(spec, result.student.policy(), cfg.alpha,
                       cfg.final_eval_episodes, StreamSeed(seed, "final_eval"));
    result.eval_env_steps += static_cast<std::uint64_t>(
        result.final_student->length_mean * cfg.final_eval_episodes + 0.5);
    log.Write({{"type", "final_eval"},
               {"step", cfg.bc_steps},
               {"student_return_mean", result.final_student->return_mean},
               {"student_return_std", result.final_student->return_std},
               {"teacher_env_steps", result.teacher_env_steps},
               {"student_env_steps", result.student_env_steps}});
    if (result.best_student_return == kNegInf) {
      result.best_student_return = result.final_student->return_mean;
    }
  } else {
    result.best_student_return = 0.0;
  }
  if (write_files) {
    SaveCheckpoint(options.output_dir / "student.ckpt", result.student.Save());
    nlohmann::json summary = {{"algorithm", "two_stage_bc"},
                              {"seed", seed},
                              {"bc_steps", cfg.bc_steps},
                              {"teacher_env_steps", result.teacher_env_steps},
                              {"student_env_steps", result.student_env_steps},
                              {"best_student_return", result.best_student_return}};
    if (result.final_student) {
      summary["final_student_return"] = result.final_student->return_mean;
    }
    WriteJsonFile(options.output_dir / "summary.json", summary);
  }
  return result;
}

ExpertBuffer GenerateOracleDemonstrations(const EnvSpec& spec, int episodes,
                                          std::uint64_t seed,
                                          std::vector<double>* returns) {
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  ExpertBuffer demos(spec.state_dim, spec.action_dim);
  for (int j = 0; j < episodes; ++j) {
    EnvState state = Reset(spec, StreamSeed(seed, "demo_reset", j));
    demos.BeginEpisode();
    double ret = 0.0;
    while (!state.done) {
      const Vector a = ScriptedOracle(spec, state.s);
      demos.Add(state.s, a);
      StepResult step = Step(spec, state, a);
      ret += step.reward;
      state = std::move(step.next);
    }
    if (returns != nullptr) returns->push_back(ret);
  }
  return demos;
}

}  // namespace l2t
