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

#ifndef L2T_ORCHESTRATOR_RNG_STREAMS_H_
#define L2T_ORCHESTRATOR_RNG_STREAMS_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace l2t {

// SplitMix64 finalizer.
std::uint64_t MixSeed(std::uint64_t x);

// Seed of the named stream `purpose`/`index` under a run seed. Streams with
// different names or indices are decorrelated, so consuming one never
// shifts another.
std::uint64_t StreamSeed(std::uint64_t seed, std::string_view purpose,
                         std::uint64_t index = 0);

std::mt19937_64 MakeStream(std::uint64_t seed, std::string_view purpose,
                           std::uint64_t index = 0);

}  // namespace l2t

#endif  // L2T_ORCHESTRATOR_RNG_STREAMS_H_
