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

#ifndef L2T_REPLAY_REPLAY_BUFFER_H_
#define L2T_REPLAY_REPLAY_BUFFER_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "l2t/envs/env.h"
#include "l2t/numcore/tensor.h"

namespace l2t {

// One environment step seen through both views: the privileged state s and
// the noisy observation o generated from it at collection time.
struct Transition {
  Vector s;
  Vector o;
  Vector a;
  double r = 0.0;
  Vector s_next;
  Vector o_next;
  // Absorbing transition (failure). Time-limit ends are not marked, so the
  // critic keeps bootstrapping through them.
  bool done = false;
  double alpha_at_collection = 0.0;
};

// A minibatch gathered into row-aligned matrices. Row i of every field comes
// from the same Transition, so the teacher view (s, a, r, s_next, done) and
// the student view (o, a, r, o_next, done) are index-aligned.
struct Batch {
  std::vector<std::size_t> indices;
  Matrix s;
  Matrix o;
  Matrix a;
  Matrix r;  // B x 1
  Matrix s_next;
  Matrix o_next;
  Matrix done;  // B x 1, 1.0 for absorbing transitions
  Matrix alpha_at_collection;  // B x 1

  int size() const { return static_cast<int>(indices.size()); }
};

// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, double action_low, double action_high);

  // Validates the transition (noise box on both (s, o) pairs at
  // alpha_at_collection, finite reward, action within bounds, consistent
  // dims) and throws std::invalid_argument with a diagnostic otherwise.
  void Push(Transition t);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return size_ == 0; }

  // Logical index 0 is the oldest stored transition.
  const Transition& at(std::size_t i) const;

  // Uniform with replacement over stored transitions; logical indices.
  std::vector<std::size_t> SampleIndices(int n, std::mt19937_64& rng) const;
  std::vector<Transition> SampleMinibatch(int n, std::mt19937_64& rng) const;
  Batch Gather(const std::vector<std::size_t>& indices) const;

  // O(size) audit of the noise-box invariant over every stored transition.
  bool AuditNoiseInvariant() const;

 private:
  std::size_t capacity_;
  double action_low_;
  double action_high_;
  std::vector<Transition> ring_;
  std::size_t head_ = 0;  // physical index of the oldest element
  std::size_t size_ = 0;
};

}  // namespace l2t

#endif  // L2T_REPLAY_REPLAY_BUFFER_H_
