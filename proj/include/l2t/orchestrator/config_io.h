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

#ifndef L2T_ORCHESTRATOR_CONFIG_IO_H_
#define L2T_ORCHESTRATOR_CONFIG_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "l2t/orchestrator/config.h"

namespace l2t {

// Text format: `key = value` lines grouped under `[section]` headers, with
// `#` comments. Keys are addressed as `section.key`; a bare key is accepted
// when exactly one section defines it. Lists are comma-separated.
//
// Applies `text` and then each `key=value` override on top of the defaults
// and validates the result. Every error is a ConfigError whose key() is the
// full key path (or "config" for structural errors).
ExperimentConfig ParseConfigText(std::string_view text,
                                 const std::vector<std::string>& overrides = {});

// Every key with its resolved value, sections in a fixed order. Doubles are
// written in shortest round-trip form, so parsing the echo reproduces `cfg`.
std::string ConfigToText(const ExperimentConfig& cfg);

// All `section.key` paths, in echo order.
std::vector<std::string> ConfigKeys();

}  // namespace l2t

#endif  // L2T_ORCHESTRATOR_CONFIG_IO_H_
