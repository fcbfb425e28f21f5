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

#ifndef L2T_ORCHESTRATOR_METRICS_H_
#define L2T_ORCHESTRATOR_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace l2t {

struct EvalRecord {
  std::int64_t step = 0;
  double teacher_return_mean = 0.0;
  double teacher_return_std = 0.0;
  double student_return_mean = 0.0;
  double student_return_std = 0.0;
  double episode_length_mean = 0.0;
  // Curriculum noise scale the buffer was filled with at this step.
  double alpha_current = 0.0;
  // Target noise scale the student was evaluated with.
  double alpha_eval = 0.0;
  double teacher_average_reward = 0.0;
};

nlohmann::json ToJson(const EvalRecord& record);

// Newline-delimited JSON records, each flushed as soon as it is written.
// A default-constructed log discards everything. No wall-clock fields are
// recorded, so a seeded rerun reproduces the file byte for byte.
class MetricsLog {
 public:
  MetricsLog() = default;
  explicit MetricsLog(const std::filesystem::path& path);

  bool enabled() const { return out_.is_open(); }
  void Write(const nlohmann::json& record);
  std::int64_t records_written() const { return records_; }

 private:
  std::ofstream out_;
  std::int64_t records_ = 0;
};

// Converts a metrics log into `step,agent,metric,value` rows. Eval records
// expand into one row per numeric field; loss records use agent "loss".
// Returns the number of data rows. Throws ParseError on malformed lines.
std::int64_t ExportMetricsCsv(const std::filesystem::path& jsonl_path,
                              const std::filesystem::path& csv_path);

void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& value);

}  // namespace l2t

#endif  // L2T_ORCHESTRATOR_METRICS_H_
