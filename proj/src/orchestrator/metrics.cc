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

#include "l2t/orchestrator/metrics.h"

#include <stdexcept>
#include <string_view>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

// (agent, metric) for a field of a record without an explicit agent.
std::pair<std::string, std::string> SplitField(const std::string& key) {
  for (std::string_view agent : {"teacher", "student"}) {
    if (key.size() > agent.size() + 1 && key.starts_with(agent) &&
        key[agent.size()] == '_') {
      return {std::string(agent), key.substr(agent.size() + 1)};
    }
  }
  return {"run", key};
}

std::string FormatValue(double v) {
  nlohmann::json j = v;
  return j.dump();
}

}  // namespace

nlohmann::json ToJson(const EvalRecord& record) {
  return {
      {"step", record.step},
      {"teacher_return_mean", record.teacher_return_mean},
      {"teacher_return_std", record.teacher_return_std},
      {"student_return_mean", record.student_return_mean},
      {"student_return_std", record.student_return_std},
      {"episode_length_mean", record.episode_length_mean},
      {"alpha_current", record.alpha_current},
      {"alpha_eval", record.alpha_eval},
      {"teacher_average_reward", record.teacher_average_reward},
  };
}

MetricsLog::MetricsLog(const std::filesystem::path& path)
    : out_(path, std::ios::out | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open " + path.string());
}

void MetricsLog::Write(const nlohmann::json& record) {
  if (!out_.is_open()) return;
  out_ << record.dump() << '\n';
  out_.flush();
  ++records_;
}

std::int64_t ExportMetricsCsv(const std::filesystem::path& jsonl_path,
                              const std::filesystem::path& csv_path) {
  std::ifstream in(jsonl_path);
  if (!in) throw std::runtime_error("cannot open " + jsonl_path.string());
  std::ofstream out(csv_path, std::ios::out | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + csv_path.string());
  out << "step,agent,metric,value\n";
  std::int64_t rows = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!record.is_object() || !record.contains("step")) {
      throw ParseError("record without a step field", line_no);
    }
    const auto step = record["step"].get<std::int64_t>();
    const std::string type = record.value("type", "eval");
    const std::string prefix = type == "final_eval" ? "final_" : "";
    for (const auto& [key, value] : record.items()) {
      if (key == "step" || !value.is_number()) continue;
      std::pair<std::string, std::string> field;
      if (record.contains("agent")) {
        field = {record["agent"].get<std::string>(), key};
      } else {
        field = SplitField(key);
      }
      out << step << ',' << field.first << ',' << prefix << field.second
          << ',' << FormatValue(value.get<double>()) << '\n';
      ++rows;
    }
  }
  return rows;
}

void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& value) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << value.dump(2) << '\n';
}

}  // namespace l2t
