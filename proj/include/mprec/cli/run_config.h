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

#ifndef MPREC_CLI_RUN_CONFIG_H_
#define MPREC_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mprec/data/ratings.h"
#include "mprec/model/config.h"
#include "mprec/training/trainer.h"

namespace mprec::cli {

// Every recognized setting of every command, flat. Values arrive as
// key=value strings from a config file and then from command-line flags;
// later assignments win.
struct RunConfig {
  // data
  std::string input;
  std::string dataset;
  std::string out;
  data::RatingFormat format = data::RatingFormat::kMovieLens100K;
  std::optional<int> min_user;  // default depends on format
  std::optional<int> min_item;
  std::uint64_t data_seed = 0;

  // model
  int stages = 3;
  int perspectives = 6;
  int input_dim = 50;
  std::vector<int> stage_dims = {50, 50, 128};
  model::AttentionKind attention = model::AttentionKind::kCorrelated;
  double init_std = 0.01;

  // training
  std::uint64_t seed = 0;
  int batch_size = 256;
  int neg_ratio = 7;
  double learning_rate = 1e-4;
  int epochs = 20;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double clamp_eps = 1e-6;
  int eval_every = 1;
  bool log_wall_time = true;

  // evaluation
  int k = 10;
  bool write_ranks = false;

  // Throws ConfigError for an unknown key or unparsable value.
  void Set(std::string_view key, std::string_view value);

  int EffectiveMinUser() const;
  int EffectiveMinItem() const;

  model::ModelConfig ToModelConfig(std::int32_t num_users, std::int32_t num_items) const;
  training::TrainConfig ToTrainConfig() const;

  // Path keys (input, dataset, out) are omitted unless requested, so that
  // artifacts do not depend on where files live.
  nlohmann::json ToJson(bool with_paths = false) const;
};

std::vector<std::string> RunConfigKeys();

// `key = value` lines; '#' starts a comment. Returns assignments in file
// order. Throws IoError or ConfigError (with line number).
std::vector<std::pair<std::string, std::string>> ReadConfigFile(
    const std::filesystem::path& path);

// Splits "key=value". Throws ConfigError when '=' is missing.
std::pair<std::string, std::string> SplitAssignment(std::string_view text);

}  // namespace mprec::cli

#endif  // MPREC_CLI_RUN_CONFIG_H_
