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

#include "l2t/replay/demonstrations.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "l2t/numcore/errors.h"

namespace l2t {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

bool ParseDouble(std::string_view field, double& out) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   out);
  return ec == std::errc() && ptr == field.data() + field.size() &&
         std::isfinite(out);
}

bool ParseDimField(std::string_view field, std::string_view key, int& out) {
  if (field.substr(0, key.size()) != key) return false;
  field.remove_prefix(key.size());
  if (field.empty() || field.front() != '=') return false;
  field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   out);
  return ec == std::errc() && ptr == field.data() + field.size() && out > 0;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

ExpertBuffer::ExpertBuffer(int state_dim, int action_dim)
    : state_dim_(state_dim), action_dim_(action_dim) {
  if (state_dim <= 0 || action_dim <= 0) {
    throw DimensionError("expert buffer dims must be positive");
  }
}

void ExpertBuffer::BeginEpisode() {
  if (episode_starts_.empty() || episode_starts_.back() != states_.size()) {
    episode_starts_.push_back(states_.size());
  }
}

void ExpertBuffer::Add(const Vector& s, const Vector& a) {
  if (s.size() != state_dim_ || a.size() != action_dim_) {
    throw DimensionError("expert pair dims do not match the buffer");
  }
  if (episode_starts_.empty()) episode_starts_.push_back(0);
  states_.push_back(s);
  actions_.push_back(a);
}

void ExpertBuffer::Sample(int n, std::mt19937_64& rng, Matrix& states,
                          Matrix& actions) const {
  if (empty()) throw std::logic_error("cannot sample an empty expert buffer");
  std::uniform_int_distribution<std::size_t> pick(0, states_.size() - 1);
  states.resize(n, state_dim_);
  actions.resize(n, action_dim_);
  for (int row = 0; row < n; ++row) {
    const std::size_t i = pick(rng);
    states.row(row) = states_[i].transpose();
    actions.row(row) = actions_[i].transpose();
  }
}

void SaveDemonstrations(const std::filesystem::path& path,
                        const ExpertBuffer& demos) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "state_dim=" << demos.state_dim()
      << ",action_dim=" << demos.action_dim() << "\n";
  const auto& starts = demos.episode_starts();
  std::size_t next_episode = 1;
  for (std::size_t i = 0; i < demos.size(); ++i) {
    if (next_episode < starts.size() && starts[next_episode] == i) {
      out << "\n";
      ++next_episode;
    }
    std::string line;
    for (Eigen::Index j = 0; j < demos.state(i).size(); ++j) {
      if (j) line += ',';
      line += FormatDouble(demos.state(i)[j]);
    }
    for (Eigen::Index j = 0; j < demos.action(i).size(); ++j) {
      line += ',';
      line += FormatDouble(demos.action(i)[j]);
    }
    out << line << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ExpertBuffer LoadDemonstrations(const std::filesystem::path& path,
                                const std::optional<EnvSpec>& expected) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing header", line_no);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto comma = line.find(',');
  int state_dim = 0, action_dim = 0;
  if (comma == std::string::npos ||
      !ParseDimField(std::string_view(line).substr(0, comma), "state_dim",
                     state_dim) ||
      !ParseDimField(std::string_view(line).substr(comma + 1), "action_dim",
                     action_dim)) {
    throw ParseError(
        "header must read state_dim=<n>,action_dim=<m>, got '" + line + "'",
        line_no);
  }
  if (expected && (expected->state_dim != state_dim ||
                   expected->action_dim != action_dim)) {
    throw ParseError("declared dims (" + std::to_string(state_dim) + ", " +
                         std::to_string(action_dim) +
                         ") do not match the environment",
                     line_no);
  }

  ExpertBuffer demos(state_dim, action_dim);
  const int width = state_dim + action_dim;
  Vector s(state_dim), a(action_dim);
  bool pending_break = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) {
      pending_break = true;
      continue;
    }
    if (pending_break && !demos.empty()) demos.BeginEpisode();
    pending_break = false;
    std::string_view rest(line);
    int col = 0;
    while (true) {
      const auto sep = rest.find(',');
      const std::string_view field = rest.substr(0, sep);
      double v = 0.0;
      if (col >= width || !ParseDouble(field, v)) {
        throw ParseError("row must hold " + std::to_string(width) +
                             " comma-separated numbers",
                         line_no);
      }
      if (col < state_dim) {
        s[col] = v;
      } else {
        a[col - state_dim] = v;
      }
      ++col;
      if (sep == std::string_view::npos) break;
      rest.remove_prefix(sep + 1);
    }
    if (col != width) {
      throw ParseError("row has " + std::to_string(col) + " values, expected " +
                           std::to_string(width),
                       line_no);
    }
    demos.Add(s, a);
  }
  if (demos.empty()) throw ParseError("demonstration file has no data rows", 0);
  return demos;
}

}  // namespace l2t
