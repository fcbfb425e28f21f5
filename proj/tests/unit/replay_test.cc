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
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "l2t/envs/env.h"
#include "l2t/envs/noise.h"
#include "l2t/numcore/errors.h"
#include "l2t/replay/demonstrations.h"
#include "l2t/replay/replay_buffer.h"
#include "test_util.h"

namespace l2t {
namespace {

// A valid pendulum transition tagged by its reward.
Transition Tagged(double tag, double alpha = 0.0, std::mt19937_64* rng = nullptr) {
  Transition t;
  t.s = Vector::Constant(2, 1.0 + tag);
  t.s_next = Vector::Constant(2, 2.0 + tag);
  if (rng != nullptr) {
    t.o = Observe(t.s, alpha, *rng);
    t.o_next = Observe(t.s_next, alpha, *rng);
  } else {
    t.o = t.s;
    t.o_next = t.s_next;
  }
  t.a = Vector::Constant(1, 0.5);
  t.r = tag;
  t.alpha_at_collection = alpha;
  return t;
}

TEST(ReplayBufferTest, PushGrowsSize) {
  ReplayBuffer buf(10, -2.0, 2.0);
  EXPECT_TRUE(buf.empty());
  buf.Push(Tagged(1));
  EXPECT_EQ(buf.size(), 1u);
}

TEST(ReplayBufferTest, FifoEviction) {
  ReplayBuffer two(2, -2.0, 2.0);
  for (int i = 1; i <= 3; ++i) two.Push(Tagged(i));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two.at(0).r, 2.0);
  EXPECT_EQ(two.at(1).r, 3.0);

  // After capacity + k pushes the buffer holds exactly pushes k+1..capacity+k.
  const std::size_t cap = 7;
  for (std::size_t k = 0; k < 20; ++k) {
    ReplayBuffer buf(cap, -2.0, 2.0);
    for (std::size_t i = 1; i <= cap + k; ++i) buf.Push(Tagged(double(i)));
    ASSERT_EQ(buf.size(), cap);
    for (std::size_t j = 0; j < cap; ++j) {
      EXPECT_EQ(buf.at(j).r, double(k + 1 + j));
    }
  }
}

TEST(ReplayBufferTest, RejectsInvalidTransitions) {
  ReplayBuffer buf(4, -2.0, 2.0);
  Transition noisy = Tagged(0);
  noisy.alpha_at_collection = 0.1;
  noisy.o[0] = noisy.s[0] * 1.2;  // outside the 10% box
  EXPECT_THROW(buf.Push(noisy), std::invalid_argument);
  Transition noisy_next = Tagged(0);
  noisy_next.o_next[1] += 1e-9;  // alpha 0 requires exact equality
  EXPECT_THROW(buf.Push(noisy_next), std::invalid_argument);
  Transition nan_reward = Tagged(0);
  nan_reward.r = std::nan("");
  EXPECT_THROW(buf.Push(nan_reward), std::invalid_argument);
  Transition wide = Tagged(0);
  wide.a[0] = 2.5;
  EXPECT_THROW(buf.Push(wide), std::invalid_argument);
  Transition ragged = Tagged(0);
  ragged.o = Vector::Zero(3);
  EXPECT_THROW(buf.Push(ragged), std::invalid_argument);
  EXPECT_TRUE(buf.empty());
}

TEST(ReplayBufferTest, EmptySampleThrows) {
  ReplayBuffer buf(4, -2.0, 2.0);
  std::mt19937_64 rng(0);
  EXPECT_ANY_THROW(buf.SampleIndices(3, rng));
}

TEST(ReplayBufferTest, SingleItemRepeats) {
  ReplayBuffer buf(4, -2.0, 2.0);
  buf.Push(Tagged(7));
  std::mt19937_64 rng(0);
  const auto batch = buf.SampleMinibatch(4, rng);
  ASSERT_EQ(batch.size(), 4u);
  for (const Transition& t : batch) EXPECT_EQ(t.r, 7.0);
}

TEST(ReplayBufferTest, SeededSamplingIsDeterministic) {
  ReplayBuffer buf(100, -2.0, 2.0);
  for (int i = 0; i < 50; ++i) buf.Push(Tagged(i));
  std::mt19937_64 a(5), b(5);
  EXPECT_EQ(buf.SampleIndices(64, a), buf.SampleIndices(64, b));
}

TEST(ReplayBufferTest, SamplingIsUniform) {
  ReplayBuffer buf(10, -2.0, 2.0);
  for (int i = 0; i < 10; ++i) buf.Push(Tagged(i));
  std::mt19937_64 rng(12);
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (std::size_t idx : buf.SampleIndices(n, rng)) ++counts[idx];
  const double expected = n / 10.0;
  const double sigma = std::sqrt(n * 0.1 * 0.9);
  double chi2 = 0.0;
  for (int c : counts) {
    EXPECT_LE(std::abs(c - expected), 3.0 * sigma);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 99.9th percentile of chi-square with 9 degrees of freedom.
  EXPECT_LT(chi2, 27.88);
}

TEST(ReplayBufferTest, GatheredViewsAreIndexAligned) {
  std::mt19937_64 noise(3);
  ReplayBuffer buf(64, -2.0, 2.0);
  for (int i = 0; i < 40; ++i) buf.Push(Tagged(i * 0.1, 0.3, &noise));
  EXPECT_TRUE(buf.AuditNoiseInvariant());
  std::mt19937_64 rng(1);
  const auto idx = buf.SampleIndices(32, rng);
  const Batch b = buf.Gather(idx);
  ASSERT_EQ(b.size(), 32);
  for (int i = 0; i < b.size(); ++i) {
    const Transition& t = buf.at(idx[i]);
    EXPECT_EQ(Vector(b.s.row(i).transpose()), t.s);
    EXPECT_EQ(Vector(b.o.row(i).transpose()), t.o);
    EXPECT_EQ(Vector(b.o_next.row(i).transpose()), t.o_next);
    EXPECT_EQ(Vector(b.s_next.row(i).transpose()), t.s_next);
    EXPECT_EQ(b.r(i, 0), t.r);
    EXPECT_EQ(b.a(i, 0), t.a[0]);
    EXPECT_EQ(b.done(i, 0), 0.0);
    EXPECT_EQ(b.alpha_at_collection(i, 0), 0.3);
  }
}

ExpertBuffer SampleDemos() {
  ExpertBuffer demos(2, 1);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n;
  for (int ep = 0; ep < 3; ++ep) {
    demos.BeginEpisode();
    for (int t = 0; t < 5 + ep; ++t) {
      Vector s(2), a(1);
      s << n(rng) * 1e-7, n(rng) * 1e12;
      a << std::nextafter(n(rng), 1.0);
      demos.Add(s, a);
    }
  }
  return demos;
}

TEST(DemonstrationTest, RoundTripIsBitExact) {
  const ExpertBuffer demos = SampleDemos();
  const auto path = test::TempPath("demos_roundtrip.txt");
  SaveDemonstrations(path, demos);
  const ExpertBuffer back = LoadDemonstrations(path);
  EXPECT_EQ(back, demos);
  EXPECT_EQ(back.episode_starts(), (std::vector<std::size_t>{0, 5, 11}));
  // And the file is a fixed point of load-then-save.
  const auto again = test::TempPath("demos_roundtrip2.txt");
  SaveDemonstrations(again, back);
  std::ifstream f1(path), f2(again);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(f1), {}),
            std::string(std::istreambuf_iterator<char>(f2), {}));
}

TEST(DemonstrationTest, TwoHundredRows) {
  const auto path = test::TempPath("demos_200.txt");
  {
    std::ofstream out(path);
    out << "state_dim=2,action_dim=1\n";
    for (int i = 0; i < 200; ++i) out << i * 0.01 << ",-0.5," << 0.1 << "\n";
  }
  const ExpertBuffer demos =
      LoadDemonstrations(path, MakeEnvSpec(EnvName::kPendulum));
  EXPECT_EQ(demos.size(), 200u);
  EXPECT_EQ(demos.state(199)[0], 1.99);
  EXPECT_EQ(demos.episode_starts().size(), 1u);
}

int ParseErrorLine(const std::string& contents) {
  const auto path = test::TempPath("demos_bad.txt");
  {
    std::ofstream out(path);
    out << contents;
  }
  try {
    LoadDemonstrations(path, MakeEnvSpec(EnvName::kPendulum));
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(DemonstrationTest, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(ParseErrorLine("state_dim=2\n0,0,0\n"), 1);
  // An empty data section has no offending line.
  EXPECT_EQ(ParseErrorLine("state_dim=2,action_dim=1\n"), 0);
  EXPECT_EQ(ParseErrorLine("state_dim=2,action_dim=1\n\n\n"), 0);
  EXPECT_EQ(ParseErrorLine("state_dim=2,action_dim=1\n0,0,0\n0,0\n"), 3);
  EXPECT_EQ(ParseErrorLine("state_dim=2,action_dim=1\n0,0,0\n\n1,x,0\n"), 4);
  EXPECT_EQ(ParseErrorLine("state_dim=4,action_dim=2\n0,0,0,0,0,0\n"), 1);
  EXPECT_EQ(ParseErrorLine("state_dim=2,action_dim=1\n0,0,nan\n"), 2);
}

TEST(DemonstrationTest, MissingFileThrows) {
  EXPECT_ANY_THROW(LoadDemonstrations("/nonexistent/demos.txt"));
}

TEST(ExpertBufferTest, SampleShapesAndEmptyError) {
  const ExpertBuffer demos = SampleDemos();
  std::mt19937_64 rng(0);
  Matrix s, a;
  demos.Sample(16, rng, s, a);
  EXPECT_EQ(s.rows(), 16);
  EXPECT_EQ(s.cols(), 2);
  EXPECT_EQ(a.cols(), 1);
  ExpertBuffer empty(2, 1);
  EXPECT_THROW(empty.Sample(1, rng, s, a), std::logic_error);
}

}  // namespace
}  // namespace l2t
