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

#include "l2t/replay/replay_buffer.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "l2t/envs/noise.h"

namespace l2t {

ReplayBuffer::ReplayBuffer(std::size_t capacity, double action_low,
                           double action_high)
    : capacity_(capacity), action_low_(action_low), action_high_(action_high) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be > 0");
}

void ReplayBuffer::Push(Transition t) {
  auto reject = [](const std::string& why) {
    throw std::invalid_argument("transition rejected: " + why);
  };
  if (t.s.size() != t.o.size() || t.s_next.size() != t.o_next.size() ||
      t.s.size() != t.s_next.size()) {
    reject("state/observation dims differ");
  }
  if (size_ > 0) {
    const Transition& ref = at(0);
    if (t.s.size() != ref.s.size() || t.a.size() != ref.a.size()) {
      reject("dims differ from stored transitions");
    }
  }
  if (!(t.alpha_at_collection >= 0.0)) reject("negative alpha");
  if (!WithinNoiseBox(t.s, t.o, t.alpha_at_collection)) {
    std::ostringstream msg;
    msg << "|o - s| exceeds alpha*|s| (alpha=" << t.alpha_at_collection << ")";
    reject(msg.str());
  }
  if (!WithinNoiseBox(t.s_next, t.o_next, t.alpha_at_collection)) {
    reject("|o_next - s_next| exceeds alpha*|s_next|");
  }
  if (!std::isfinite(t.r)) reject("non-finite reward");
  if (!t.s.allFinite() || !t.s_next.allFinite() || !t.a.allFinite()) {
    reject("non-finite entries");
  }
  if ((t.a.array() < action_low_).any() || (t.a.array() > action_high_).any()) {
    reject("action outside bounds");
  }

  if (ring_.size() < capacity_) {
    ring_.push_back(std::move(t));
    ++size_;
  } else {
    ring_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("replay index out of range");
  return ring_[(head_ + i) % capacity_];
}

std::vector<std::size_t> ReplayBuffer::SampleIndices(
    int n, std::mt19937_64& rng) const {
  if (size_ == 0) throw std::logic_error("cannot sample an empty buffer");
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = pick(rng);
  return out;
}

std::vector<Transition> ReplayBuffer::SampleMinibatch(
    int n, std::mt19937_64& rng) const {
  std::vector<Transition> out;
  out.reserve(n);
  for (std::size_t i : SampleIndices(n, rng)) out.push_back(at(i));
  return out;
}

Batch ReplayBuffer::Gather(const std::vector<std::size_t>& indices) const {
  if (indices.empty()) throw std::invalid_argument("empty index list");
  const Transition& first = at(indices.front());
  const int n = static_cast<int>(indices.size());
  const int sd = static_cast<int>(first.s.size());
  const int ad = static_cast<int>(first.a.size());
  Batch b;
  b.indices = indices;
  b.s.resize(n, sd);
  b.o.resize(n, sd);
  b.a.resize(n, ad);
  b.r.resize(n, 1);
  b.s_next.resize(n, sd);
  b.o_next.resize(n, sd);
  b.done.resize(n, 1);
  b.alpha_at_collection.resize(n, 1);
  for (int row = 0; row < n; ++row) {
    const Transition& t = at(indices[row]);
    b.s.row(row) = t.s.transpose();
    b.o.row(row) = t.o.transpose();
    b.a.row(row) = t.a.transpose();
    b.r(row, 0) = t.r;
    b.s_next.row(row) = t.s_next.transpose();
    b.o_next.row(row) = t.o_next.transpose();
    b.done(row, 0) = t.done ? 1.0 : 0.0;
    b.alpha_at_collection(row, 0) = t.alpha_at_collection;
  }
  return b;
}

bool ReplayBuffer::AuditNoiseInvariant() const {
  for (std::size_t i = 0; i < size_; ++i) {
    const Transition& t = at(i);
    if (!WithinNoiseBox(t.s, t.o, t.alpha_at_collection) ||
        !WithinNoiseBox(t.s_next, t.o_next, t.alpha_at_collection)) {
      return false;
    }
  }
  return true;
}

}  // namespace l2t
