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

#include "l2t/orchestrator/config_io.h"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <system_error>

namespace l2t {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  if (Trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.emplace_back(Trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string& key, std::string_view text,
              const char* kind) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(key, std::string("expected ") + kind + ", got '" +
                               std::string(text) + "'");
  }
  return value;
}

double ParseDouble(const std::string& key, std::string_view text) {
  return ParseNumber<double>(key, text, "a number");
}

std::int64_t ParseInt(const std::string& key, std::string_view text) {
  return ParseNumber<std::int64_t>(key, text, "an integer");
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

template <typename T>
std::string JoinList(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_same_v<T, std::string>) {
      out += values[i];
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::vector<int> ParseIntList(const std::string& key, std::string_view text) {
  std::vector<int> out;
  for (const std::string& item : SplitList(text)) {
    const std::int64_t v = ParseInt(key, item);
    if (v <= 0 || v > 1 << 20) throw ConfigError(key, "layer width out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string_view ActivationString(Activation a) {
  return a == Activation::kTanh ? "tanh" : "relu";
}

Activation ParseActivation(const std::string& key, std::string_view text) {
  if (text == "tanh") return Activation::kTanh;
  if (text == "relu") return Activation::kRelu;
  throw ConfigError(key, "expected tanh or relu, got '" + std::string(text) + "'");
}

// Wraps an enum parser so its exception carries the key path.
template <typename F>
auto ParseEnum(const std::string& key, std::string_view text, F parse) {
  try {
    return parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

int NarrowInt(const std::string& key, std::int64_t v) {
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(key, "out of range");
  return static_cast<int>(v);
}

struct Field {
  std::string path;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&, std::string_view)>
      set;
};

#define L2T_DOUBLE_FIELD(path, member)                                   \
  Field {                                                                \
    path, [](const ExperimentConfig& c) { return FormatDouble(c.member); }, \
        [](ExperimentConfig& c, const std::string& k, std::string_view v) { \
          c.member = ParseDouble(k, v);                                  \
        }                                                                \
  }
#define L2T_INT64_FIELD(path, member)                                        \
  Field {                                                                    \
    path,                                                                    \
        [](const ExperimentConfig& c) { return std::to_string(c.member); },  \
        [](ExperimentConfig& c, const std::string& k, std::string_view v) {  \
          c.member = ParseInt(k, v);                                         \
        }                                                                    \
  }
#define L2T_INT_FIELD(path, member)                                          \
  Field {                                                                    \
    path,                                                                    \
        [](const ExperimentConfig& c) { return std::to_string(c.member); },  \
        [](ExperimentConfig& c, const std::string& k, std::string_view v) {  \
          c.member = NarrowInt(k, ParseInt(k, v));                           \
        }                                                                    \
  }
#define L2T_STRING_FIELD(path, member)                                      \
  Field {                                                                   \
    path, [](const ExperimentConfig& c) { return c.member; },               \
        [](ExperimentConfig& c, const std::string&, std::string_view v) {   \
          c.member = std::string(v);                                        \
        }                                                                   \
  }
#define L2T_HIDDEN_FIELD(path, member)                                      \
  Field {                                                                   \
    path, [](const ExperimentConfig& c) { return JoinList(c.member); },     \
        [](ExperimentConfig& c, const std::string& k, std::string_view v) { \
          c.member = ParseIntList(k, v);                                    \
        }                                                                   \
  }
#define L2T_ACTIVATION_FIELD(path, member)                                  \
  Field {                                                                   \
    path,                                                                   \
        [](const ExperimentConfig& c) {                                     \
          return std::string(ActivationString(c.member));                   \
        },                                                                  \
        [](ExperimentConfig& c, const std::string& k, std::string_view v) { \
          c.member = ParseActivation(k, v);                                 \
        }                                                                   \
  }

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"experiment.env",
       [](const ExperimentConfig& c) { return std::string(EnvNameString(c.env)); },
       [](ExperimentConfig& c, const std::string& k, std::string_view v) {
         c.env = ParseEnum(k, v, ParseEnvName);
       }},
      {"experiment.algorithm",
       [](const ExperimentConfig& c) {
         return std::string(AlgorithmString(c.algorithm));
       },
       [](ExperimentConfig& c, const std::string& k, std::string_view v) {
         c.algorithm = ParseEnum(k, v, ParseAlgorithm);
       }},
      L2T_INT64_FIELD("experiment.total_steps", total_steps),
      L2T_INT64_FIELD("experiment.warmup_steps", warmup_steps),
      L2T_INT64_FIELD("experiment.eval_interval", eval_interval),
      L2T_INT_FIELD("experiment.eval_episodes", eval_episodes),
      L2T_INT_FIELD("experiment.final_eval_episodes", final_eval_episodes),
      {"experiment.seeds",
       [](const ExperimentConfig& c) { return JoinList(c.seeds); },
       [](ExperimentConfig& c, const std::string& k, std::string_view v) {
         c.seeds.clear();
         for (const std::string& item : SplitList(v)) {
           c.seeds.push_back(ParseNumber<std::uint64_t>(
               k, item, "a non-negative integer"));
         }
       }},
      L2T_INT_FIELD("experiment.batch_size", batch_size),
      L2T_INT64_FIELD("experiment.buffer_capacity", buffer_capacity),
      L2T_INT64_FIELD("experiment.loss_log_interval", loss_log_interval),

      L2T_DOUBLE_FIELD("noise.alpha", alpha),
      {"noise.curriculum",
       [](const ExperimentConfig& c) {
         return std::string(CurriculumShapeString(c.curriculum));
       },
       [](ExperimentConfig& c, const std::string& k, std::string_view v) {
         c.curriculum = ParseEnum(k, v, ParseCurriculumShape);
       }},
      L2T_DOUBLE_FIELD("noise.curriculum_fraction", curriculum_fraction),

      L2T_HIDDEN_FIELD("teacher.hidden", teacher.hidden),
      L2T_ACTIVATION_FIELD("teacher.activation", teacher.activation),
      L2T_DOUBLE_FIELD("teacher.actor_lr", teacher.actor_lr),
      L2T_DOUBLE_FIELD("teacher.critic_lr", teacher.critic_lr),
      L2T_DOUBLE_FIELD("teacher.tau", teacher.tau),
      L2T_DOUBLE_FIELD("teacher.gamma", teacher.gamma),
      L2T_DOUBLE_FIELD("teacher.entropy_temp", teacher.entropy_temp),

      L2T_HIDDEN_FIELD("student.hidden", student.hidden),
      L2T_ACTIVATION_FIELD("student.activation", student.activation),
      L2T_DOUBLE_FIELD("student.lr", student.lr),
      {"student.loss_mode",
       [](const ExperimentConfig& c) {
         return std::string(StudentLossModeString(c.student.loss_mode));
       },
       [](ExperimentConfig& c, const std::string& k, std::string_view v) {
         c.student.loss_mode = ParseEnum(k, v, ParseStudentLossMode);
       }},
      L2T_INT_FIELD("student.combined_bc_p", student.combined_bc_p),
      L2T_DOUBLE_FIELD("student.bc_log_std_weight", student.bc_log_std_weight),

      L2T_STRING_FIELD("irl.demo_path", demo_path),
      L2T_INT_FIELD("irl.demo_episodes", demo_episodes),
      {"irl.demo_seed",
       [](const ExperimentConfig& c) { return std::to_string(c.demo_seed); },
       [](ExperimentConfig& c, const std::string& k, std::string_view v) {
         c.demo_seed =
             ParseNumber<std::uint64_t>(k, v, "a non-negative integer");
       }},
      L2T_DOUBLE_FIELD("irl.psi_coeff", reward.psi_coeff),
      L2T_DOUBLE_FIELD("irl.eta", reward.eta),
      L2T_DOUBLE_FIELD("irl.output_bound", reward.output_bound),
      L2T_HIDDEN_FIELD("irl.hidden", reward.hidden),
      L2T_ACTIVATION_FIELD("irl.activation", reward.activation),

      L2T_INT64_FIELD("bc.steps", bc_steps),
      L2T_INT_FIELD("bc.p", bc_p),
      L2T_STRING_FIELD("bc.teacher_checkpoint", teacher_checkpoint),

      L2T_STRING_FIELD("sweep.parameter", sweep_parameter),
      {"sweep.values",
       [](const ExperimentConfig& c) { return JoinList(c.sweep_values); },
       [](ExperimentConfig& c, const std::string&, std::string_view v) {
         c.sweep_values = SplitList(v);
       }},
  };
  return fields;
}

#undef L2T_DOUBLE_FIELD
#undef L2T_INT64_FIELD
#undef L2T_INT_FIELD
#undef L2T_STRING_FIELD
#undef L2T_HIDDEN_FIELD
#undef L2T_ACTIVATION_FIELD

const Field& Resolve(const std::string& key) {
  const auto& fields = Fields();
  if (key.find('.') != std::string::npos) {
    for (const Field& f : fields) {
      if (f.path == key) return f;
    }
    throw ConfigError(key, "unknown key");
  }
  const Field* match = nullptr;
  for (const Field& f : fields) {
    if (f.path.substr(f.path.find('.') + 1) == key) {
      if (match != nullptr) {
        throw ConfigError(key, "ambiguous key; qualify it with a section");
      }
      match = &f;
    }
  }
  if (match == nullptr) throw ConfigError(key, "unknown key");
  return *match;
}

void Assign(ExperimentConfig& cfg, const std::string& key,
            std::string_view value) {
  const Field& field = Resolve(key);
  field.set(cfg, field.path, Trim(value));
}

}  // namespace

ExperimentConfig ParseConfigText(std::string_view text,
                                 const std::vector<std::string>& overrides) {
  ExperimentConfig cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config", "line " + std::to_string(line_no) +
                                        ": malformed section header");
      }
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", "line " + std::to_string(line_no) +
                                      ": expected key = value");
    }
    std::string key(Trim(line.substr(0, eq)));
    if (!section.empty()) key = section + "." + key;
    Assign(cfg, key, line.substr(eq + 1));
  }
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(item, "override must look like key=value");
    }
    Assign(cfg, std::string(Trim(std::string_view(item).substr(0, eq))),
           std::string_view(item).substr(eq + 1));
  }
  ValidateConfig(cfg);
  return cfg;
}

std::string ConfigToText(const ExperimentConfig& cfg) {
  std::string out;
  std::string section;
  for (const Field& f : Fields()) {
    const auto dot = f.path.find('.');
    const std::string s = f.path.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out += "\n";
      out += "[" + s + "]\n";
      section = s;
    }
    out += f.path.substr(dot + 1) + " = " + f.get(cfg) + "\n";
  }
  return out;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Fields()) keys.push_back(f.path);
  return keys;
}

}  // namespace l2t
