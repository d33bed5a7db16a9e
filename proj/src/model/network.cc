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

#include "mprec/model/network.h"

#include <algorithm>
#include <unordered_map>

#include "mprec/errors.h"
#include "mprec/model/attention.h"
#include "mprec/numerics/ops.h"

namespace mprec::model {
namespace {

using numerics::Index;
using numerics::SparseRows;

constexpr std::size_t kInferenceChunk = 8192;

// Distinct keys in first-seen order and, per input position, its slot.
struct Dedup {
  std::vector<std::int32_t> keys;
  std::vector<Index> slots;
};

template <typename KeyFn>
Dedup Deduplicate(std::span<const Pair> pairs, KeyFn key) {
  Dedup d;
  std::unordered_map<std::int32_t, Index> slot_of;
  d.slots.reserve(pairs.size());
  for (const Pair& p : pairs) {
    const std::int32_t k = key(p);
    auto [it, inserted] = slot_of.try_emplace(k, static_cast<Index>(d.keys.size()));
    if (inserted) d.keys.push_back(k);
    d.slots.push_back(it->second);
  }
  return d;
}

Vector Bias(const ModelParams& params, ParamId id) { return params.tensors[id].col(0); }

}  // namespace

ScoreGraph BuildScoreGraph(Tape& tape, const ModelConfig& config,
                           const ModelParams& params,
                           const data::InteractionMatrix& interactions,
                           std::span<const Pair> pairs, GraphOptions options) {
  if (pairs.empty()) throw ContractViolation("score graph needs at least one pair");
  CheckParams(config, params);
  if (interactions.rows() != config.num_users || interactions.cols() != config.num_items) {
    throw DimensionError("interaction matrix " +
                         ShapeString(interactions.rows(), interactions.cols()) +
                         " does not match model " +
                         ShapeString(config.num_users, config.num_items));
  }
  const ParamLayout layout(config);
  auto param = [&](ParamId id) { return tape.Parameter(id, params.tensors[id]); };

  const Dedup users = Deduplicate(pairs, [](const Pair& p) { return p.user; });
  const Dedup items = Deduplicate(pairs, [](const Pair& p) { return p.item; });
  SparseRows user_rows;
  user_rows.width = interactions.cols();
  for (std::int32_t u : users.keys) {
    user_rows.AppendRow(interactions.RowIndices(u), interactions.RowValues(u));
  }
  SparseRows item_rows;
  item_rows.width = interactions.rows();
  for (std::int32_t i : items.keys) {
    item_rows.AppendRow(interactions.ColIndices(i), interactions.ColValues(i));
  }

  NodeId r_user = tape.Relu(tape.SparseAffine(std::move(user_rows),
                                              param(ParamLayout::kInputUserWeight),
                                              param(ParamLayout::kInputUserBias)));
  r_user = tape.GatherRows(r_user, users.slots);
  NodeId r_item = tape.Relu(tape.SparseAffine(std::move(item_rows),
                                              param(ParamLayout::kInputItemWeight),
                                              param(ParamLayout::kInputItemBias)));
  r_item = tape.GatherRows(r_item, items.slots);

  for (int s = 0; s < config.num_stages; ++s) {
    const Index d = config.stage_dims[s];
    std::vector<NodeId> parts_user, parts_item;
    for (int p = 0; p < config.perspectives; ++p) {
      auto id = [&](StageTensor t) { return layout.Stage(s, p, t); };
      const NodeId q_user = tape.Relu(tape.Affine(r_user, param(id(StageTensor::kUserWeight)),
                                                  param(id(StageTensor::kUserBias))));
      const NodeId q_item = tape.Relu(tape.Affine(r_item, param(id(StageTensor::kItemWeight)),
                                                  param(id(StageTensor::kItemBias))));
      const NodeId s_user =
          tape.SoftmaxRows(tape.Affine(q_item, param(id(StageTensor::kUserAttention))));
      const NodeId s_item =
          tape.SoftmaxRows(tape.Affine(q_user, param(id(StageTensor::kItemAttention))));
      NodeId a_user = s_user, a_item = s_item;
      if (config.attention == AttentionKind::kCorrelated) {
        if (options.composed_correlation) {
          const NodeId t = tape.Tanh(tape.OuterRows(s_user, s_item));
          a_user = tape.BlockRowMeans(t, d, d);
          a_item = tape.BlockColMeans(t, d, d);
        } else {
          const NodeId gate = tape.CorrelatedGate(s_user, s_item);
          a_user = tape.SliceCols(gate, 0, d);
          a_item = tape.SliceCols(gate, d, d);
        }
      }
      parts_user.push_back(tape.Hadamard(q_user, a_user));
      parts_item.push_back(tape.Hadamard(q_item, a_item));
    }
    r_user = parts_user.size() == 1 ? parts_user[0] : tape.ConcatCols(parts_user);
    r_item = parts_item.size() == 1 ? parts_item[0] : tape.ConcatCols(parts_item);
  }

  ScoreGraph g;
  g.user_repr = r_user;
  g.item_repr = r_item;
  g.scores = tape.CosineRows(r_user, r_item);
  return g;
}

ForwardTrace Forward(const ModelParams& params, const ModelConfig& config,
                     const data::InteractionMatrix& interactions,
                     std::int32_t user, std::int32_t item) {
  CheckParams(config, params);
  const ParamLayout layout(config);
  ForwardTrace trace;
  const InputEncoding enc = EncodeInputs(params, interactions, user, item);
  trace.input_user = enc.user;
  trace.input_item = enc.item;

  Vector r_user = enc.user, r_item = enc.item;
  for (int s = 0; s < config.num_stages; ++s) {
    const Index d = config.stage_dims[s];
    std::vector<PerspectiveTrace> stage;
    Vector next_user(config.perspectives * d), next_item(config.perspectives * d);
    for (int p = 0; p < config.perspectives; ++p) {
      auto t = [&](StageTensor k) -> const Matrix& {
        return params.tensors[layout.Stage(s, p, k)];
      };
      PerspectiveTrace pt;
      pt.q_user = numerics::Relu(numerics::Affine(
          t(StageTensor::kUserWeight), r_user,
          Bias(params, layout.Stage(s, p, StageTensor::kUserBias))));
      pt.q_item = numerics::Relu(numerics::Affine(
          t(StageTensor::kItemWeight), r_item,
          Bias(params, layout.Stage(s, p, StageTensor::kItemBias))));
      AttentionSignals a =
          config.attention == AttentionKind::kSoftmax
              ? SoftmaxAttention(t(StageTensor::kUserAttention),
                                 t(StageTensor::kItemAttention), pt.q_user, pt.q_item)
              : CorrelatedAttention(t(StageTensor::kUserAttention),
                                    t(StageTensor::kItemAttention), pt.q_user, pt.q_item);
      pt.a_user = std::move(a.user);
      pt.a_item = std::move(a.item);
      pt.correlation = std::move(a.correlation);
      pt.r_user = numerics::Hadamard(pt.q_user, pt.a_user);
      pt.r_item = numerics::Hadamard(pt.q_item, pt.a_item);
      next_user.segment(p * d, d) = pt.r_user;
      next_item.segment(p * d, d) = pt.r_item;
      stage.push_back(std::move(pt));
    }
    trace.stages.push_back(std::move(stage));
    r_user = std::move(next_user);
    r_item = std::move(next_item);
  }
  trace.user_repr = r_user;
  trace.item_repr = r_item;
  trace.score = (r_user.norm() == 0.0 || r_item.norm() == 0.0)
                    ? 0.0
                    : numerics::Cosine(r_user, r_item);
  return trace;
}

std::vector<double> ScorePairs(const ModelParams& params, const ModelConfig& config,
                               const data::InteractionMatrix& interactions,
                               std::span<const Pair> pairs) {
  std::vector<double> scores;
  scores.reserve(pairs.size());
  Tape tape;
  for (std::size_t begin = 0; begin < pairs.size(); begin += kInferenceChunk) {
    const std::size_t n = std::min(kInferenceChunk, pairs.size() - begin);
    tape.Clear();
    const ScoreGraph g =
        BuildScoreGraph(tape, config, params, interactions, pairs.subspan(begin, n));
    const Matrix& v = tape.Value(g.scores);
    for (Index r = 0; r < v.rows(); ++r) scores.push_back(v(r, 0));
  }
  return scores;
}

std::vector<double> PredictScores(const ModelParams& params, const ModelConfig& config,
                                  const data::InteractionMatrix& interactions,
                                  std::int32_t user,
                                  std::span<const std::int32_t> items) {
  if (items.empty()) return {};
  std::vector<Pair> pairs;
  pairs.reserve(items.size());
  for (std::int32_t i : items) pairs.push_back({user, i});
  return ScorePairs(params, config, interactions, pairs);
}

}  // namespace mprec::model
