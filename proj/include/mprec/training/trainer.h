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

#ifndef MPREC_TRAINING_TRAINER_H_
#define MPREC_TRAINING_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"
#include "mprec/data/dataset_io.h"
#include "mprec/data/sampling.h"
#include "mprec/data/split.h"
#include "mprec/model/config.h"
#include "mprec/model/params.h"
#include "mprec/training/adam.h"

namespace mprec::training {

struct TrainConfig {
  int batch_size = 256;
  int neg_ratio = 7;
  double learning_rate = 1e-4;
  int epochs = 20;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double clamp_eps = 1e-6;
  std::uint64_t seed = 0;
  int eval_every = 1;
};

// Throws ConfigError describing the first violated invariant.
void Validate(const TrainConfig& config);

nlohmann::json ToJson(const TrainConfig& config);

// All train positives (target 1) followed by their sampled negatives, then
// shuffled. A pure function of (split, neg_ratio, seed, epoch).
std::vector<data::Instance> EpochInstances(const data::SplitSet& split,
                                           const data::PositiveIndex& positives,
                                           int neg_ratio, std::uint64_t seed,
                                           std::int64_t epoch);

struct EpochSummary {
  double mean_loss = 0.0;
  std::size_t examples = 0;
};

// One pass over EpochInstances in batches, one Adam step per batch.
EpochSummary TrainEpoch(model::ModelParams& params, AdamState& state,
                        const model::ModelConfig& model_config,
                        const TrainConfig& config, const data::Dataset& dataset,
                        const data::PositiveIndex& positives, std::int64_t epoch);

struct EpochRecord {
  std::int64_t epoch = 0;  // 1-based
  double mean_loss = 0.0;
  std::optional<double> dev_hr10;
  std::optional<double> dev_ndcg10;
  double wall_ms = 0.0;
};

// {epoch, mean_loss, dev_hr10, dev_ndcg10[, wall_ms]}; unevaluated epochs
// carry null dev metrics.
nlohmann::json ToJson(const EpochRecord& record, bool with_wall_time);

struct TrainResult {
  std::vector<EpochRecord> log;
  model::ModelParams best;
  model::ModelParams last;
  std::int64_t best_epoch = 0;  // 0 when no epoch was evaluated
};

// Invoked after every epoch with the updated parameters; `improved` is true
// when this epoch became the new best on dev HR@10.
using EpochCallback = std::function<void(const EpochRecord& record,
                                         const model::ModelParams& params,
                                         bool improved)>;

// Runs config.epochs epochs from `initial`. Dev metrics are computed every
// eval_every epochs and always after the final one. The best checkpoint is
// the first epoch reaching the highest dev HR@10; with no evaluation it is
// the final state.
TrainResult Train(const model::ModelConfig& model_config, const TrainConfig& config,
                  const data::Dataset& dataset, model::ModelParams initial,
                  const EpochCallback& on_epoch = {});

}  // namespace mprec::training

#endif  // MPREC_TRAINING_TRAINER_H_
