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

#include "mprec/training/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "mprec/errors.h"
#include "mprec/eval/evaluator.h"
#include "mprec/random.h"
#include "mprec/training/loss.h"

namespace mprec::training {

void Validate(const TrainConfig& c) {
  if (c.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (c.neg_ratio < 0) throw ConfigError("neg_ratio must be >= 0");
  if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate)) {
    throw ConfigError("learning_rate must be a positive finite number");
  }
  if (c.epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0) || !(c.beta2 >= 0.0 && c.beta2 < 1.0)) {
    throw ConfigError("adam betas must lie in [0, 1)");
  }
  if (!(c.adam_eps > 0.0)) throw ConfigError("adam_eps must be > 0");
  if (!(c.clamp_eps > 0.0 && c.clamp_eps < 0.5)) {
    throw ConfigError("clamp_eps must lie in (0, 0.5)");
  }
  if (c.eval_every < 1) throw ConfigError("eval_every must be >= 1");
}

nlohmann::json ToJson(const TrainConfig& c) {
  nlohmann::json j;
  j["batch_size"] = c.batch_size;
  j["neg_ratio"] = c.neg_ratio;
  j["learning_rate"] = c.learning_rate;
  j["epochs"] = c.epochs;
  j["beta1"] = c.beta1;
  j["beta2"] = c.beta2;
  j["adam_eps"] = c.adam_eps;
  j["clamp_eps"] = c.clamp_eps;
  j["seed"] = c.seed;
  j["eval_every"] = c.eval_every;
  return j;
}

std::vector<data::Instance> EpochInstances(const data::SplitSet& split,
                                           const data::PositiveIndex& positives,
                                           int neg_ratio, std::uint64_t seed,
                                           std::int64_t epoch) {
  std::vector<data::Instance> out;
  out.reserve(split.train.size() * static_cast<std::size_t>(neg_ratio + 1));
  for (const data::Rating& r : split.train) out.push_back({r.user, r.item, 1.0});
  if (neg_ratio > 0) {
    const std::vector<data::Instance> neg =
        data::SampleTrainNegatives(split, positives, neg_ratio, seed, epoch);
    out.insert(out.end(), neg.begin(), neg.end());
  }
  Rng rng = MakeRng(seed, Stream::kShuffle, static_cast<std::uint64_t>(epoch));
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

EpochSummary TrainEpoch(model::ModelParams& params, AdamState& state,
                        const model::ModelConfig& model_config,
                        const TrainConfig& config, const data::Dataset& dataset,
                        const data::PositiveIndex& positives, std::int64_t epoch) {
  const std::vector<data::Instance> instances =
      EpochInstances(dataset.split, positives, config.neg_ratio, config.seed, epoch);
  const AdamOptions adam{config.learning_rate, config.beta1, config.beta2, config.adam_eps};
  numerics::GradientTable grads = numerics::ZeroGradients(params.tensors);
  double total = 0.0;
  const std::size_t bs = static_cast<std::size_t>(config.batch_size);
  for (std::size_t begin = 0; begin < instances.size(); begin += bs) {
    const std::size_t n = std::min(bs, instances.size() - begin);
    for (Matrix& g : grads) g.setZero();
    const double loss = BatchLoss(model_config, params, dataset.matrix,
                                  std::span(instances).subspan(begin, n),
                                  config.clamp_eps, &grads);
    AdamStep(params.tensors, grads, state, adam);
    total += loss * static_cast<double>(n);
  }
  EpochSummary s;
  s.examples = instances.size();
  s.mean_loss = instances.empty() ? 0.0 : total / static_cast<double>(instances.size());
  return s;
}

nlohmann::json ToJson(const EpochRecord& r, bool with_wall_time) {
  nlohmann::json j;
  j["epoch"] = r.epoch;
  j["mean_loss"] = r.mean_loss;
  j["dev_hr10"] = r.dev_hr10 ? nlohmann::json(*r.dev_hr10) : nlohmann::json(nullptr);
  j["dev_ndcg10"] = r.dev_ndcg10 ? nlohmann::json(*r.dev_ndcg10) : nlohmann::json(nullptr);
  if (with_wall_time) j["wall_ms"] = r.wall_ms;
  return j;
}

TrainResult Train(const model::ModelConfig& model_config, const TrainConfig& config,
                  const data::Dataset& dataset, model::ModelParams initial,
                  const EpochCallback& on_epoch) {
  model::Validate(model_config);
  Validate(config);
  model::CheckParams(model_config, initial);
  if (model_config.num_users != dataset.matrix.rows() ||
      model_config.num_items != dataset.matrix.cols()) {
    throw ConfigError("model expects " +
                      ShapeString(model_config.num_users, model_config.num_items) +
                      " users x items but the dataset has " +
                      ShapeString(dataset.matrix.rows(), dataset.matrix.cols()));
  }
  const data::PositiveIndex positives(dataset.split);
  AdamState state = AdamState::ZerosLike(initial.tensors);

  TrainResult result;
  result.last = std::move(initial);
  result.best = result.last;
  double best_hr = -1.0;
  for (std::int64_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    EpochRecord rec;
    rec.epoch = epoch;
    rec.mean_loss = TrainEpoch(result.last, state, model_config, config, dataset,
                               positives, epoch)
                        .mean_loss;
    bool improved = false;
    if (epoch % config.eval_every == 0 || epoch == config.epochs) {
      const eval::ModelScorer scorer(model_config, result.last, dataset.matrix);
      const eval::MetricsReport dev = eval::Evaluate(scorer, dataset.dev_candidates, 10);
      rec.dev_hr10 = dev.hr;
      rec.dev_ndcg10 = dev.ndcg;
      if (dev.hr > best_hr) {
        best_hr = dev.hr;
        result.best = result.last;
        result.best_epoch = epoch;
        improved = true;
      }
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    result.log.push_back(rec);
    if (on_epoch) on_epoch(rec, result.last, improved);
  }
  if (result.best_epoch == 0) result.best = result.last;
  return result;
}

}  // namespace mprec::training
