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

#ifndef MPREC_CLI_CHECKPOINT_H_
#define MPREC_CLI_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>

#include "json.hpp"
#include "mprec/model/config.h"
#include "mprec/model/params.h"

namespace mprec::cli {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Self-describing model snapshot. `meta` must contain a "model" object
// accepted by ModelConfigFromJson; everything else is provenance.
struct Checkpoint {
  nlohmann::json meta;
  model::ModelParams params;
};

// Layout, little-endian: "MPRC", u32 version, u32-length-prefixed UTF-8
// JSON, u32 tensor count, then per tensor a u32-length-prefixed name, u64
// rows, u64 cols and rows·cols f64 values row-major.
void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);

// Throws CheckpointError for a bad magic, unknown version, truncation, or
// tensors that disagree with the embedded model config.
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

model::ModelConfig CheckpointModelConfig(const Checkpoint& checkpoint);

}  // namespace mprec::cli

#endif  // MPREC_CLI_CHECKPOINT_H_
