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

#ifndef L2T_NUMCORE_CHECKPOINT_H_
#define L2T_NUMCORE_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "l2t/numcore/mlp.h"
#include "l2t/numcore/tensor.h"

namespace l2t {

inline constexpr int kCheckpointFormatVersion = 1;

using NamedTensors = std::vector<std::pair<std::string, Tensor>>;

// Layout: a text header
//   l2t-checkpoint <version>\n
//   <count>\n
//   <name> <rank> <dim0> [<dim1>]\n   (one line per tensor)
// followed by the raw little-endian float64 values of every tensor,
// row-major, in header order. Loading reproduces the saved bits exactly.
void SaveCheckpoint(const std::filesystem::path& path,
                    const NamedTensors& tensors);
NamedTensors LoadCheckpoint(const std::filesystem::path& path);

// Helpers for moving whole networks in and out of a NamedTensors list.
void AppendMlp(NamedTensors& out, const std::string& prefix, const Mlp& net);
// Copies matching tensors into `net`; throws ParseError if a name is missing
// or a shape differs.
void RestoreMlp(const NamedTensors& in, const std::string& prefix, Mlp& net);

}  // namespace l2t

#endif  // L2T_NUMCORE_CHECKPOINT_H_
