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


#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "gtest/gtest.h"

#include "common/test_util.h"
#include "mprec/errors.h"
#include "mprec/model/network.h"
#include "mprec/numerics/grad_check.h"
#include "mprec/training/adam.h"
#include "mprec/training/loss.h"
#include "mprec/training/trainer.h"

namespace mprec::training {
namespace {

using model::AttentionKind;
using model::ModelConfig;
using model::ModelParams;

ModelConfig TinyConfig(AttentionKind attention, std::uint64_t seed) {
  ModelConfig c;
  c.num_users = 3;
  c.num_items = 4;
  c.num_stages = 2;
  c.perspectives = 2;
  c.input_dim = 3;
  c.stage_dims = {3, 3};
  c.attention = attention;
  c.init_std = 0.5;
  c.seed = seed;
  return c;
}

data::InteractionMatrix RandomInteractions(std::int32_t users, std::int32_t items,
                                           std::mt19937_64& rng) {
  numerics::Matrix t(users, items);
  std::uniform_int_distribution<int> stars(0, 5);
  for (numerics::Index i = 0; i < t.size(); ++i) t.data()[i] = stars(rng);
  return data::InteractionMatrix::FromDense(t);
}

std::vector<data::Instance> AllPairs(const data::InteractionMatrix& m) {
  std::vector<data::Instance> batch;
  for (std::int32_t u = 0; u < m.rows(); ++u) {
    for (std::int32_t i = 0; i < m.cols(); ++i) {
      batch.push_back({u, i, m.at(u, i) > 0 ? 1.0 : 0.0});
    }
  }
  return batch;
}

numerics::GradCheckResult CheckBatchLoss(const ModelConfig& c, const ModelParams& p,
                                         const data::InteractionMatrix& m,
                                         std::span<const data::Instance> batch,
                                         model::GraphOptions options = {}) {
  const numerics::Objective f = [&](const std::vector<numerics::Matrix>& tensors,
                                    numerics::GradientTable* grads) {
    ModelParams q{p.names, tensors};
    return BatchLoss(c, q, m, batch, 1e-6, grads, options);
  };
  return numerics::GradCheck(f, p.tensors, 1e-5);
}

// Central differences at eps = 1e-5 resolve a gradient entry only down to
// about ulp(loss) / eps ~ 1e-11, and the zero-norm convention makes the loss
// jump where a final representation vanishes. Instances with a nonzero
// gradient entry below 1e-7 or a representation norm below 1e-3 are outside
// what the oracle can judge and are redrawn.
bool WellConditioned(const ModelConfig& c, const ModelParams& p,
                     const data::InteractionMatrix& m,
                     std::span<const data::Instance> batch) {
  numerics::GradientTable g = numerics::ZeroGradients(p.tensors);
  BatchLoss(c, p, m, batch, 1e-6, &g);
  for (const numerics::Matrix& t : g) {
    for (numerics::Index i = 0; i < t.size(); ++i) {
      const double a = std::abs(t.data()[i]);
      if (a > 0 && a < 1e-7) return false;
    }
  }
  std::vector<model::Pair> pairs;
  for (const data::Instance& x : batch) pairs.push_back({x.user, x.item});
  numerics::Tape tape;
  const model::ScoreGraph graph = model::BuildScoreGraph(tape, c, p, m, pairs);
  return tape.Value(graph.user_repr).rowwise().norm().minCoeff() >= 1e-3 &&
         tape.Value(graph.item_repr).rowwise().norm().minCoeff() >= 1e-3;
}

TEST(BceLossTest, Examples) {
  EXPECT_NEAR(BceLoss(0.5, 1, 1e-6).loss, 0.6931471805599453, 1e-15);
  EXPECT_NEAR(BceLoss(1.0, 1, 1e-6).loss, 1e-6, 1e-12);
  const numerics::BceValue v = BceLoss(-0.3, 0, 1e-6);
  EXPECT_NEAR(v.loss, 1e-6, 1e-12);
  EXPECT_EQ(v.grad, 0.0);
  EXPECT_THROW(BceLoss(0.5, 1, 0.5), ContractViolation);
  EXPECT_THROW(BceLoss(0.5, 1, 0.0), ContractViolation);
}

TEST(AdamTest, ZeroGradientIsIdentity) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<numerics::Matrix> params = {testing::RandomMatrix(3, 2, rng),
                                            testing::RandomMatrix(1, 4, rng)};
    const auto before = params;
    const std::vector<numerics::Matrix> grads = {numerics::Matrix::Zero(3, 2),
                                                 numerics::Matrix::Zero(1, 4)};
    AdamState state = AdamState::ZerosLike(params);
    for (int step = 0; step < 3; ++step) AdamStep(params, grads, state, {});
    EXPECT_EQ(params, before);
    EXPECT_EQ(state.t, 3);
  }
}

TEST(AdamTest, FirstStepScalar) {
  std::vector<numerics::Matrix> params = {numerics::Matrix::Zero(1, 1)};
  const std::vector<numerics::Matrix> grads = {numerics::Matrix::Ones(1, 1)};
  AdamState state = AdamState::ZerosLike(params);
  EXPECT_EQ(state.t, 0);
  EXPECT_TRUE(state.m[0].isZero() && state.v[0].isZero());
  AdamStep(params, grads, state, {.learning_rate = 1e-4});
  EXPECT_NEAR(params[0](0, 0), -1e-4 / (1 + 1e-8), 1e-20);
  EXPECT_NEAR(params[0](0, 0), -9.99999e-5, 1e-10);
}

TEST(AdamTest, MatchesScalarReferenceTrace) {
  const AdamOptions o{.learning_rate = 0.01, .beta1 = 0.8, .beta2 = 0.9, .eps = 1e-6};
  std::vector<numerics::Matrix> params = {numerics::Matrix::Constant(1, 1, 0.5)};
  AdamState state = AdamState::ZerosLike(params);
  double theta = 0.5, m = 0, v = 0;
  const double g[] = {0.3, 0.3, -1.2, 2.0, 0.0};
  for (int t = 1; t <= 5; ++t) {
    m = o.beta1 * m + (1 - o.beta1) * g[t - 1];
    v = o.beta2 * v + (1 - o.beta2) * g[t - 1] * g[t - 1];
    const double mh = m / (1 - std::pow(o.beta1, t)), vh = v / (1 - std::pow(o.beta2, t));
    theta -= o.learning_rate * mh / (std::sqrt(vh) + o.eps);
    AdamStep(params, std::vector<numerics::Matrix>{numerics::Matrix::Constant(1, 1, g[t - 1])},
             state, o);
    EXPECT_NEAR(params[0](0, 0), theta, 1e-15) << "step " << t;
  }
  // Two steps of constant gradient g: both bias-corrected ratios are 1, so
  // each step moves by lr / (1 + eps/|g|).
  std::vector<numerics::Matrix> p2 = {numerics::Matrix::Zero(1, 1)};
  AdamState s2 = AdamState::ZerosLike(p2);
  const std::vector<numerics::Matrix> g2 = {numerics::Matrix::Constant(1, 1, 0.25)};
  AdamStep(p2, g2, s2, {});
  AdamStep(p2, g2, s2, {});
  EXPECT_NEAR(p2[0](0, 0), -2 * 1e-4 * 0.25 / (0.25 + 1e-8), 1e-18);
}

TEST(AdamTest, ShapeMismatchThrows) {
  std::vector<numerics::Matrix> params = {numerics::Matrix::Zero(2, 2)};
  AdamState state = AdamState::ZerosLike(params);
  EXPECT_THROW(AdamStep(params, std::vector<numerics::Matrix>{numerics::Matrix::Zero(2, 3)},
                        state, {}),
               DimensionError);
  EXPECT_THROW(AdamStep(params, std::vector<numerics::Matrix>{}, state, {}), DimensionError);
}

class BatchGradientTest : public ::testing::TestWithParam<AttentionKind> {};

TEST_P(BatchGradientTest, TinyInstanceMatchesFiniteDifferences) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200 && checked < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const ModelConfig c = TinyConfig(GetParam(), seed);
    const ModelParams p = model::InitParams(c);
    const data::InteractionMatrix m = RandomInteractions(3, 4, rng);
    const std::vector<data::Instance> batch = AllPairs(m);
    if (!WellConditioned(c, p, m, batch)) continue;
    ++checked;
    const numerics::GradCheckResult r = CheckBatchLoss(c, p, m, batch);
    EXPECT_LT(r.max_rel_error, 1e-4) << "seed " << seed << " tensor " << p.names[r.worst_tensor];
    EXPECT_EQ(r.entries_checked, p.Count());
    EXPECT_EQ(r.per_tensor_max.size(), 4u + 2 * 2 * 6);
  }
  EXPECT_EQ(checked, 10);
}

TEST_P(BatchGradientTest, RandomShapesMatchFiniteDifferences) {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> small(1, 3);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 8; ++trial) {
    ModelConfig c;
    c.num_users = 2 + small(rng);
    c.num_items = 2 + small(rng);
    c.num_stages = small(rng);
    c.perspectives = small(rng);
    c.input_dim = 1 + small(rng);
    c.stage_dims.clear();
    for (int s = 0; s < c.num_stages; ++s) c.stage_dims.push_back(1 + small(rng));
    c.attention = GetParam();
    c.init_std = 0.5;
    c.seed = trial;
    const ModelParams p = model::InitParams(c);
    const data::InteractionMatrix m = RandomInteractions(c.num_users, c.num_items, rng);
    const std::vector<data::Instance> batch = AllPairs(m);
    if (!WellConditioned(c, p, m, batch)) continue;
    ++checked;
    EXPECT_LT(CheckBatchLoss(c, p, m, batch).max_rel_error, 1e-4) << "trial " << trial;
  }
  EXPECT_EQ(checked, 8);
}

TEST_P(BatchGradientTest, BatchGradientIsMeanOfExampleGradients) {
  std::mt19937_64 rng(63);
  ModelConfig c = TinyConfig(GetParam(), 3);
  c.num_users = 5;
  c.num_items = 6;
  const ModelParams p = model::InitParams(c);
  const data::InteractionMatrix m = RandomInteractions(5, 6, rng);
  const std::vector<data::Instance> batch = AllPairs(m);
  numerics::GradientTable whole = numerics::ZeroGradients(p.tensors);
  const double loss = BatchLoss(c, p, m, batch, 1e-6, &whole);
  numerics::GradientTable summed = numerics::ZeroGradients(p.tensors);
  double total = 0;
  for (const data::Instance& one : batch) {
    total += BatchLoss(c, p, m, std::span(&one, 1), 1e-6, &summed);
  }
  EXPECT_NEAR(loss, total / batch.size(), 1e-14);
  for (std::size_t t = 0; t < whole.size(); ++t) {
    const numerics::Matrix mean = summed[t] / static_cast<double>(batch.size());
    EXPECT_LE((whole[t] - mean).cwiseAbs().maxCoeff(), 1e-14) << p.names[t];
  }
}

INSTANTIATE_TEST_SUITE_P(Variants, BatchGradientTest,
                         ::testing::Values(AttentionKind::kSoftmax,
                                           AttentionKind::kCorrelated));

TEST(BatchGradientTest, ComposedCorrelationMatchesFiniteDifferences) {
  std::mt19937_64 rng(64);
  const ModelConfig c = TinyConfig(AttentionKind::kCorrelated, 9);
  const ModelParams p = model::InitParams(c);
  const data::InteractionMatrix m = RandomInteractions(3, 4, rng);
  const std::vector<data::Instance> batch = AllPairs(m);
  EXPECT_LT(CheckBatchLoss(c, p, m, batch, {.composed_correlation = true}).max_rel_error,
            1e-4);
  numerics::GradientTable fused = numerics::ZeroGradients(p.tensors);
  numerics::GradientTable composed = numerics::ZeroGradients(p.tensors);
  const double a = BatchLoss(c, p, m, batch, 1e-6, &fused);
  const double b = BatchLoss(c, p, m, batch, 1e-6, &composed, {.composed_correlation = true});
  EXPECT_NEAR(a, b, 1e-15);
  for (std::size_t t = 0; t < fused.size(); ++t) {
    EXPECT_LE((fused[t] - composed[t]).cwiseAbs().maxCoeff(), 1e-14) << p.names[t];
  }
}

TEST(EpochInstancesTest, MultisetProperty) {
  for (int trial = 0; trial < 100; ++trial) {
    const data::Dataset d = testing::ToyDataset(12, 40, 8, 2, trial, 20);
    const data::PositiveIndex pos(d.split);
    const int ratio = 1 + trial % 7;
    const std::vector<data::Instance> inst = EpochInstances(d.split, pos, ratio, trial, 1);
    ASSERT_EQ(inst.size(), d.split.train.size() * (ratio + 1));
    std::map<std::pair<int, int>, int> positives;
    std::map<int, int> negatives_per_user, train_per_user;
    for (const data::Instance& x : inst) {
      if (x.target == 1.0) {
        ++positives[{x.user, x.item}];
      } else {
        EXPECT_EQ(x.target, 0.0);
        EXPECT_FALSE(pos.Contains(x.user, x.item));
        ++negatives_per_user[x.user];
      }
    }
    EXPECT_EQ(positives.size(), d.split.train.size());
    for (const data::Rating& r : d.split.train) {
      EXPECT_EQ((positives[{r.user, r.item}]), 1);
      ++train_per_user[r.user];
    }
    for (const auto& [u, n] : train_per_user) EXPECT_EQ(negatives_per_user[u], n * ratio);
  }
}

TEST(EpochInstancesTest, RatioSevenGivesEightTimesPositives) {
  const data::Dataset d = testing::ToyDataset(30, 150, 20, 3, 1);
  const data::PositiveIndex pos(d.split);
  const auto a = EpochInstances(d.split, pos, 7, 5, 1);
  EXPECT_EQ(a.size(), 8 * d.split.train.size());
  EXPECT_EQ(a, EpochInstances(d.split, pos, 7, 5, 1));
  EXPECT_NE(a, EpochInstances(d.split, pos, 7, 5, 2));
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(Validate(c));
  EXPECT_EQ(c.batch_size, 256);
  EXPECT_EQ(c.neg_ratio, 7);
  EXPECT_EQ(c.learning_rate, 1e-4);
  for (auto mutate : std::vector<std::function<void(TrainConfig&)>>{
           [](TrainConfig& x) { x.batch_size = 0; },
           [](TrainConfig& x) { x.learning_rate = 0; },
           [](TrainConfig& x) { x.beta1 = 1.0; },
           [](TrainConfig& x) { x.adam_eps = 0; },
           [](TrainConfig& x) { x.clamp_eps = 0.5; },
           [](TrainConfig& x) { x.eval_every = 0; }}) {
    TrainConfig bad;
    mutate(bad);
    EXPECT_THROW(Validate(bad), ConfigError);
  }
}

ModelConfig ToyModel(const data::Dataset& d, AttentionKind attention) {
  ModelConfig c;
  c.num_users = d.matrix.rows();
  c.num_items = d.matrix.cols();
  c.num_stages = 2;
  c.perspectives = 2;
  c.input_dim = 8;
  c.stage_dims = {8, 8};
  c.attention = attention;
  c.init_std = 0.1;
  return c;
}

TEST(TrainTest, ToyLossDecreases) {
  // 5 users, no dev evaluation needed: drive TrainEpoch directly.
  const data::Dataset d = testing::ToyDataset(5, 30, 12, 1, 3, 10);
  for (AttentionKind kind : {AttentionKind::kSoftmax, AttentionKind::kCorrelated}) {
    const ModelConfig mc = ToyModel(d, kind);
    ModelParams p = model::InitParams(mc);
    TrainConfig tc;
    tc.batch_size = 16;
    tc.neg_ratio = 2;
    tc.learning_rate = 1e-2;
    AdamState state = AdamState::ZerosLike(p.tensors);
    const data::PositiveIndex pos(d.split);
    std::vector<double> losses;
    for (int epoch = 1; epoch <= 10; ++epoch) {
      const EpochSummary s = TrainEpoch(p, state, mc, tc, d, pos, epoch);
      EXPECT_EQ(s.examples, 3 * d.split.train.size());
      losses.push_back(s.mean_loss);
    }
    EXPECT_LT(losses.back(), losses.front()) << model::AttentionName(kind);
  }
}

TEST(TrainTest, DeterministicAndBestSelection) {
  const data::Dataset d = testing::ToyDataset(30, 150, 20, 3, 2);
  const ModelConfig mc = ToyModel(d, AttentionKind::kCorrelated);
  TrainConfig tc;
  tc.batch_size = 64;
  tc.learning_rate = 3e-3;
  tc.epochs = 3;
  tc.seed = 11;
  std::vector<bool> improved;
  const TrainResult a = Train(mc, tc, d, model::InitParams(mc),
                              [&](const EpochRecord&, const ModelParams&, bool up) {
                                improved.push_back(up);
                              });
  const TrainResult b = Train(mc, tc, d, model::InitParams(mc));
  ASSERT_EQ(a.log.size(), 3u);
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(ToJson(a.log[e], false), ToJson(b.log[e], false));
    EXPECT_TRUE(a.log[e].dev_hr10.has_value());
  }
  for (std::size_t t = 0; t < a.last.tensors.size(); ++t) {
    EXPECT_EQ(a.last.tensors[t], b.last.tensors[t]);
  }
  double best = -1;
  std::int64_t best_epoch = 0;
  for (const EpochRecord& r : a.log) {
    if (*r.dev_hr10 > best) {
      best = *r.dev_hr10;
      best_epoch = r.epoch;
    }
  }
  EXPECT_EQ(a.best_epoch, best_epoch);
  EXPECT_TRUE(improved.front());
  EXPECT_GE(best, *a.log.back().dev_hr10);
}

TEST(TrainTest, EvalEveryAndZeroEpochs) {
  const data::Dataset d = testing::ToyDataset(30, 150, 20, 3, 4);
  const ModelConfig mc = ToyModel(d, AttentionKind::kSoftmax);
  TrainConfig tc;
  tc.epochs = 3;
  tc.eval_every = 2;
  const TrainResult r = Train(mc, tc, d, model::InitParams(mc));
  EXPECT_TRUE(r.log[1].dev_hr10.has_value());
  EXPECT_FALSE(r.log[0].dev_hr10.has_value());
  EXPECT_TRUE(r.log[2].dev_hr10.has_value());
  EXPECT_TRUE(ToJson(r.log[0], false)["dev_hr10"].is_null());
  EXPECT_FALSE(ToJson(r.log[0], false).contains("wall_ms"));

  tc.epochs = 0;
  const ModelParams init = model::InitParams(mc);
  const TrainResult none = Train(mc, tc, d, init);
  EXPECT_TRUE(none.log.empty());
  EXPECT_EQ(none.best_epoch, 0);
  EXPECT_EQ(none.last.tensors, init.tensors);
  EXPECT_EQ(none.best.tensors, init.tensors);

  ModelConfig wrong = mc;
  wrong.num_items += 1;
  EXPECT_THROW(Train(wrong, tc, d, model::InitParams(wrong)), ConfigError);
}

}  // namespace
}  // namespace mprec::training
