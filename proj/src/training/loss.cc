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

#include "mprec/training/loss.h"

#include <string>
#include <vector>

#include "mprec/errors.h"

namespace mprec::training {
namespace {

void CheckEps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw ContractViolation("clamp eps must lie in (0, 0.5), got " + std::to_string(eps));
  }
}

}  // namespace

numerics::BceValue BceLoss(double score, double target, double eps) {
  CheckEps(eps);
  return numerics::ClampedBce(score, target, eps);
}

double BatchLoss(const model::ModelConfig& config, const model::ModelParams& params,
                 const data::InteractionMatrix& interactions,
                 std::span<const data::Instance> batch, double clamp_eps,
                 numerics::GradientTable* grads, model::GraphOptions options) {
  CheckEps(clamp_eps);
  std::vector<model::Pair> pairs;
  std::vector<double> targets;
  pairs.reserve(batch.size());
  targets.reserve(batch.size());
  for (const data::Instance& x : batch) {
    pairs.push_back({x.user, x.item});
    targets.push_back(x.target);
  }
  numerics::Tape tape;
  const model::ScoreGraph g =
      model::BuildScoreGraph(tape, config, params, interactions, pairs, options);
  const numerics::NodeId loss =
      tape.Mean(tape.Bce(g.scores, std::move(targets), clamp_eps));
  if (grads != nullptr) tape.Backward(loss, *grads);
  return tape.Value(loss)(0, 0);
}

}  // namespace mprec::training
