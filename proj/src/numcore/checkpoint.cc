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

#include "l2t/numcore/checkpoint.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "l2t/numcore/errors.h"

namespace l2t {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void SaveCheckpoint(const std::filesystem::path& path,
                    const NamedTensors& tensors) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "l2t-checkpoint " << kCheckpointFormatVersion << "\n";
  out << tensors.size() << "\n";
  for (const auto& [name, t] : tensors) {
    if (name.empty() || name.find_first_of(" \t\n") != std::string::npos) {
      throw ContractError("checkpoint tensor names must be non-empty tokens");
    }
    out << name << " " << t.rank();
    for (int d : t.shape()) out << " " << d;
    out << "\n";
  }
  for (const auto& [name, t] : tensors) {
    const auto data = t.data();
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size_bytes()));
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

NamedTensors LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty checkpoint", line_no);
  {
    std::istringstream hs(line);
    std::string magic;
    int version = 0;
    if (!(hs >> magic >> version) || magic != "l2t-checkpoint") {
      throw ParseError("not a checkpoint file", line_no);
    }
    if (version != kCheckpointFormatVersion) {
      throw ParseError("unsupported checkpoint version " +
                           std::to_string(version),
                       line_no);
    }
  }
  ++line_no;
  std::size_t count = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> count)) {
    throw ParseError("missing tensor count", line_no);
  }
  NamedTensors out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError("truncated header", line_no);
    std::istringstream ls(line);
    std::string name;
    int rank = 0;
    if (!(ls >> name >> rank) || rank < 1 || rank > 2) {
      throw ParseError("bad tensor header", line_no);
    }
    std::vector<int> shape(rank);
    for (int& d : shape) {
      if (!(ls >> d) || d <= 0) throw ParseError("bad tensor shape", line_no);
    }
    out.emplace_back(name, Tensor(shape));
  }
  for (auto& [name, t] : out) {
    auto data = t.data();
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size_bytes()));
    if (!in) throw ParseError("truncated data for tensor " + name, 0);
  }
  return out;
}

void AppendMlp(NamedTensors& out, const std::string& prefix, const Mlp& net) {
  for (const auto& [name, t] : net.NamedParameters(prefix)) {
    out.emplace_back(name, *t);
  }
}

namespace {

void CopyNamed(const NamedTensors& in, const std::string& name, Tensor& dst) {
  auto it = std::find_if(in.begin(), in.end(),
                         [&](const auto& kv) { return kv.first == name; });
  if (it == in.end()) throw ParseError("checkpoint lacks tensor " + name, 0);
  if (it->second.shape() != dst.shape()) {
    throw ParseError("shape mismatch for tensor " + name, 0);
  }
  std::copy(it->second.data().begin(), it->second.data().end(),
            dst.data().begin());
}

}  // namespace

void RestoreMlp(const NamedTensors& in, const std::string& prefix, Mlp& net) {
  for (int i = 0; i < net.num_layers(); ++i) {
    const std::string layer = prefix + "l" + std::to_string(i);
    CopyNamed(in, layer + ".w", net.weight(i));
    CopyNamed(in, layer + ".b", net.bias(i));
  }
}

}  // namespace l2t
