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

#ifndef MPREC_MODEL_CONFIG_H_
#define MPREC_MODEL_CONFIG_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mprec::model {

enum class AttentionKind { kSoftmax, kCorrelated };

AttentionKind ParseAttention(std::string_view name);  // "softmax" | "correlated"
std::string_view AttentionName(AttentionKind kind);

// Architecture of the two-tower encoder. Every width is per perspective: a
// stage with P perspectives of width d emits P·d features.
struct ModelConfig {
  std::int32_t num_users = 0;
  std::int32_t num_items = 0;
  int num_stages = 3;
  int perspectives = 6;
  int input_dim = 50;
  std::vector<int> stage_dims = {50, 50, 128};
  AttentionKind attention = AttentionKind::kCorrelated;
  double init_std = 0.01;
  std::uint64_t seed = 0;

  // Width fed into stage `stage` (0-based).
  int StageInputWidth(int stage) const;
  // Width of the final user/item representation.
  int OutputWidth() const;
};

// Throws ConfigError describing the first violated invariant.
void Validate(const ModelConfig& config);

nlohmann::json ToJson(const ModelConfig& config);
ModelConfig ModelConfigFromJson(const nlohmann::json& j);

}  // namespace mprec::model

#endif  // MPREC_MODEL_CONFIG_H_
