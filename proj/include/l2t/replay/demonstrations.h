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

#ifndef L2T_REPLAY_DEMONSTRATIONS_H_
#define L2T_REPLAY_DEMONSTRATIONS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <random>
#include <vector>

#include "l2t/envs/env.h"
#include "l2t/numcore/tensor.h"

namespace l2t {

// Expert (state, action) pairs with episode boundaries. States are
// privileged (noiseless).
class ExpertBuffer {
 public:
  ExpertBuffer() = default;
  ExpertBuffer(int state_dim, int action_dim);

  void BeginEpisode();
  void Add(const Vector& s, const Vector& a);

  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const Vector& state(std::size_t i) const { return states_[i]; }
  const Vector& action(std::size_t i) const { return actions_[i]; }
  // Index of the first pair of every episode, ascending.
  const std::vector<std::size_t>& episode_starts() const {
    return episode_starts_;
  }

  // Uniform with replacement. Throws std::logic_error when empty.
  void Sample(int n, std::mt19937_64& rng, Matrix& states,
              Matrix& actions) const;

  friend bool operator==(const ExpertBuffer&, const ExpertBuffer&) = default;

 private:
  int state_dim_ = 0;
  int action_dim_ = 0;
  std::vector<Vector> states_;
  std::vector<Vector> actions_;
  std::vector<std::size_t> episode_starts_;
};

// Text format:
//   line 1:  state_dim=<n>,action_dim=<m>
//   then one pair per line as comma-separated decimals s[0..n),a[0..m),
//   with a blank line between episodes.
// Values are written in shortest round-trip form, so Load(Save(x)) == x.
void SaveDemonstrations(const std::filesystem::path& path,
                        const ExpertBuffer& demos);

// Throws ParseError (with the 1-based line number) on a malformed header or
// row, on an empty data section, or when the declared dims differ from
// `expected` (if given).
ExpertBuffer LoadDemonstrations(const std::filesystem::path& path,
                                const std::optional<EnvSpec>& expected = {});

}  // namespace l2t

#endif  // L2T_REPLAY_DEMONSTRATIONS_H_
