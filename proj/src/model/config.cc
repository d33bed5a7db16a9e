/*
 * Copyright 2026 The MPRec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mprec/model/config.h"

#include <cmath>
#include <string>

#include "mprec/errors.h"

namespace mprec::model {

AttentionKind ParseAttention(std::string_view name) {
  if (name == "softmax") return AttentionKind::kSoftmax;
  if (name == "correlated") return AttentionKind::kCorrelated;
  throw ConfigError("unknown attention '" + std::string(name) +
                    "' (expected softmax or correlated)");
}

std::string_view AttentionName(AttentionKind kind) {
  return kind == AttentionKind::kSoftmax ? "softmax" : "correlated";
}

int ModelConfig::StageInputWidth(int stage) const {
  return stage == 0 ? input_dim : perspectives * stage_dims.at(stage - 1);
}

int ModelConfig::OutputWidth() const {
  return perspectives * stage_dims.at(num_stages - 1);
}

void Validate(const ModelConfig& c) {
  if (c.num_users < 1 || c.num_items < 1) {
    throw ConfigError("model needs at least one user and one item, got " +
                      ShapeString(c.num_users, c.num_items));
  }
  if (c.num_stages < 1) throw ConfigError("stages must be >= 1");
  if (c.perspectives < 1) throw ConfigError("perspectives must be >= 1");
  if (c.input_dim < 1) throw ConfigError("input_dim must be >= 1");
  if (static_cast<int>(c.stage_dims.size()) != c.num_stages) {
    throw ConfigError("stage_dims lists " + std::to_string(c.stage_dims.size()) +
                      " widths for " + std::to_string(c.num_stages) + " stages");
  }
  for (int d : c.stage_dims) {
    if (d < 1) throw ConfigError("stage widths must be >= 1");
  }
  if (!(c.init_std > 0.0) || !std::isfinite(c.init_std)) {
    throw ConfigError("init_std must be a positive finite number");
  }
}

nlohmann::json ToJson(const ModelConfig& c) {
  nlohmann::json j;
  j["num_users"] = c.num_users;
  j["num_items"] = c.num_items;
  j["stages"] = c.num_stages;
  j["perspectives"] = c.perspectives;
  j["input_dim"] = c.input_dim;
  j["stage_dims"] = c.stage_dims;
  j["attention"] = std::string(AttentionName(c.attention));
  j["init_std"] = c.init_std;
  j["seed"] = c.seed;
  return j;
}

ModelConfig ModelConfigFromJson(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.num_users = j.at("num_users").get<std::int32_t>();
    c.num_items = j.at("num_items").get<std::int32_t>();
    c.num_stages = j.at("stages").get<int>();
    c.perspectives = j.at("perspectives").get<int>();
    c.input_dim = j.at("input_dim").get<int>();
    c.stage_dims = j.at("stage_dims").get<std::vector<int>>();
    c.attention = ParseAttention(j.at("attention").get<std::string>());
    c.init_std = j.at("init_std").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
  Validate(c);
  return c;
}

}  // namespace mprec::model
