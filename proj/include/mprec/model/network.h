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

#ifndef MPREC_MODEL_NETWORK_H_
#define MPREC_MODEL_NETWORK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mprec/data/interaction_matrix.h"
#include "mprec/model/config.h"
#include "mprec/model/params.h"
#include "mprec/numerics/tape.h"

namespace mprec::model {

using numerics::NodeId;
using numerics::Tape;
using numerics::Vector;

struct Pair {
  std::int32_t user = 0;
  std::int32_t item = 0;
};

struct GraphOptions {
  // Build the correlated gate from OuterRows/Tanh/BlockMeans instead of the
  // fused primitive. Slower; used to cross-check the fused kernel.
  bool composed_correlation = false;
};

struct ScoreGraph {
  NodeId user_repr = numerics::kNoNode;  // [B x OutputWidth]
  NodeId item_repr = numerics::kNoNode;
  NodeId scores = numerics::kNoNode;     // [B x 1]
};

// Records the scores of `pairs` (one row each) on `tape`. Each distinct user
// and item is encoded once. `params` must outlive the tape.
ScoreGraph BuildScoreGraph(Tape& tape, const ModelConfig& config,
                           const ModelParams& params,
                           const data::InteractionMatrix& interactions,
                           std::span<const Pair> pairs, GraphOptions options = {});

struct PerspectiveTrace {
  Vector q_user, q_item;
  Vector a_user, a_item;
  Vector r_user, r_item;
  Matrix correlation;  // correlated attention only
};

struct ForwardTrace {
  Vector input_user, input_item;
  std::vector<std::vector<PerspectiveTrace>> stages;  // [stage][perspective]
  Vector user_repr, item_repr;
  double score = 0.0;
};

// Single-pair evaluation keeping every intermediate. A zero-norm final
// representation scores 0.
ForwardTrace Forward(const ModelParams& params, const ModelConfig& config,
                     const data::InteractionMatrix& interactions,
                     std::int32_t user, std::int32_t item);

// Batched inference; scores[k] belongs to pairs[k].
std::vector<double> ScorePairs(const ModelParams& params, const ModelConfig& config,
                               const data::InteractionMatrix& interactions,
                               std::span<const Pair> pairs);

std::vector<double> PredictScores(const ModelParams& params, const ModelConfig& config,
                                  const data::InteractionMatrix& interactions,
                                  std::int32_t user,
                                  std::span<const std::int32_t> items);

}  // namespace mprec::model

#endif  // MPREC_MODEL_NETWORK_H_
