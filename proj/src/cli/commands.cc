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

#include "mprec/cli/commands.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "mprec/cli/checkpoint.h"
#include "mprec/data/dataset_io.h"
#include "mprec/data/ratings.h"
#include "mprec/data/sampling.h"
#include "mprec/data/split.h"
#include "mprec/errors.h"
#include "mprec/model/network.h"
#include "mprec/random.h"
#include "mprec/training/loss.h"

namespace mprec::cli {
namespace {

constexpr int kEvalNegatives = 100;

std::filesystem::path RequirePath(const std::string& value, const char* key) {
  if (value.empty()) throw ConfigError("missing required setting '" + std::string(key) + "'");
  return value;
}

void MakeDirs(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

nlohmann::json DatasetFingerprint(const data::Dataset& ds) {
  nlohmann::json j;
  j["users"] = ds.matrix.rows();
  j["items"] = ds.matrix.cols();
  j["train"] = ds.split.train.size();
  j["data_seed"] = ds.data_seed;
  return j;
}

nlohmann::json CheckpointMeta(const RunConfig& config, const model::ModelConfig& mc,
                              const data::Dataset& ds, const training::EpochRecord* rec) {
  nlohmann::json j;
  j["model"] = model::ToJson(mc);
  j["run"] = config.ToJson();
  j["dataset"] = DatasetFingerprint(ds);
  j["epoch"] = rec ? rec->epoch : 0;
  j["dev_hr10"] = rec && rec->dev_hr10 ? nlohmann::json(*rec->dev_hr10) : nlohmann::json(nullptr);
  j["dev_ndcg10"] =
      rec && rec->dev_ndcg10 ? nlohmann::json(*rec->dev_ndcg10) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

nlohmann::json RunPrepare(const RunConfig& config, std::ostream& log) {
  const std::filesystem::path input = RequirePath(config.input, "input");
  const std::filesystem::path out = RequirePath(config.out, "out");
  const int min_user = config.EffectiveMinUser();
  const int min_item = config.EffectiveMinItem();
  if (min_user < 1 || min_item < 1) throw ConfigError("min_user and min_item must be >= 1");

  data::ParseOptions opts;
  opts.format = config.format;
  data::ParseReport parsed = data::ParseRatings(input, opts);
  if (parsed.malformed_lines > 0) {
    log << "warning: skipped " << parsed.malformed_lines << " malformed line(s) in "
        << input.string() << ", first at line " << parsed.malformed_line_numbers.front()
        << "\n";
  }
  data::FilterReport filtered = data::FilterDensity(parsed.table, min_user, min_item);

  data::Dataset ds;
  ds.data_seed = config.data_seed;
  ds.split = data::SplitLeaveOneOut(filtered.table, config.data_seed);
  ds.matrix = data::BuildInteractionMatrix(ds.split);
  const data::PositiveIndex positives(ds.split);
  ds.test_candidates = data::BuildEvalCandidates(ds.split, positives, data::HoldOut::kTest,
                                                 config.data_seed, kEvalNegatives);
  ds.dev_candidates = data::BuildEvalCandidates(ds.split, positives, data::HoldOut::kDev,
                                                config.data_seed, kEvalNegatives);

  const data::RatingTable& t = filtered.table;
  const double density = static_cast<double>(t.records.size()) /
                         (static_cast<double>(t.num_users) * static_cast<double>(t.num_items));
  nlohmann::json stats;
  stats["seed"] = config.data_seed;
  stats["format"] = std::string(data::FormatName(config.format));
  stats["users"] = t.num_users;
  stats["items"] = t.num_items;
  stats["ratings"] = t.records.size();
  stats["density"] = density;
  stats["min_user"] = min_user;
  stats["min_item"] = min_item;
  stats["lines"] = parsed.lines;
  stats["malformed_lines"] = parsed.malformed_lines;
  stats["duplicates"] = parsed.duplicates;
  stats["header_skipped"] = parsed.header_skipped;
  stats["removed_items"] = filtered.removed_items;
  stats["removed_users"] = filtered.removed_users;
  stats["removed_records"] = filtered.removed_records;
  stats["residual_sparse_items"] = filtered.residual_sparse_items;
  stats["train"] = ds.split.train.size();
  stats["dev"] = ds.split.dev.size();
  stats["test"] = ds.split.test.size();
  stats["eval_negatives"] = kEvalNegatives;

  data::WriteDatasetDir(out, ds, t, stats);
  log << "users " << t.num_users << ", items " << t.num_items << ", ratings "
      << t.records.size() << ", density " << Fixed(100.0 * density, 3) << "%\n";
  if (filtered.residual_sparse_items > 0) {
    log << "note: " << filtered.residual_sparse_items
        << " item(s) fell below min_item after the user pass\n";
  }
  log << stats.dump(2) << "\n";
  return stats;
}

training::TrainResult RunTrain(const RunConfig& config, std::ostream& log) {
  const std::filesystem::path dataset_dir = RequirePath(config.dataset, "dataset");
  const std::filesystem::path out = RequirePath(config.out, "out");
  const training::TrainConfig tc = config.ToTrainConfig();
  const data::Dataset ds = data::LoadDatasetDir(dataset_dir);
  const model::ModelConfig mc = config.ToModelConfig(ds.matrix.rows(), ds.matrix.cols());
  if (ds.dev_candidates.empty()) throw DataError("dataset has no dev candidates");

  MakeDirs(out);
  nlohmann::json header = config.ToJson();
  header["dataset"] = DatasetFingerprint(ds);
  data::WriteTextFile(out / "run.json", header.dump(2) + "\n");
  log << "run " << config.ToJson().dump() << "\n";

  model::ModelParams initial = model::InitParams(mc);
  log << "model " << model::AttentionName(mc.attention) << ", " << initial.Count()
      << " parameters, representation width " << mc.OutputWidth() << "\n";

  const std::filesystem::path log_path = out / "epochs.jsonl";
  data::WriteTextFile(log_path, "");
  std::ofstream epochs(log_path, std::ios::binary | std::ios::app);
  if (!epochs) throw IoError("cannot write " + log_path.string());

  if (tc.epochs == 0) {
    const Checkpoint ck{CheckpointMeta(config, mc, ds, nullptr), initial};
    SaveCheckpoint(out / "last.ckpt", ck);
    SaveCheckpoint(out / "best.ckpt", ck);
  }
  const training::EpochCallback on_epoch = [&](const training::EpochRecord& rec,
                                               const model::ModelParams& params,
                                               bool improved) {
    epochs << training::ToJson(rec, config.log_wall_time).dump() << "\n";
    epochs.flush();
    if (!epochs) throw IoError("failed writing " + log_path.string());
    const Checkpoint ck{CheckpointMeta(config, mc, ds, &rec), params};
    SaveCheckpoint(out / "last.ckpt", ck);
    if (improved) SaveCheckpoint(out / "best.ckpt", ck);
    log << "epoch " << rec.epoch << " loss " << Fixed(rec.mean_loss, 6);
    if (rec.dev_hr10) {
      log << " dev_hr10 " << Fixed(*rec.dev_hr10, 4) << " dev_ndcg10 "
          << Fixed(*rec.dev_ndcg10, 4);
    }
    log << " (" << Fixed(rec.wall_ms / 1000.0, 1) << " s)\n";
  };
  training::TrainResult result = training::Train(mc, tc, ds, std::move(initial), on_epoch);
  if (result.best_epoch == 0 && tc.epochs > 0) {
    SaveCheckpoint(out / "best.ckpt",
                   {CheckpointMeta(config, mc, ds, &result.log.back()), result.best});
  }
  log << "best epoch " << result.best_epoch << "\n";
  return result;
}

eval::MetricsReport RunEvaluate(const std::filesystem::path& checkpoint_path,
                                const RunConfig& config, std::ostream& log) {
  const std::filesystem::path dataset_dir = RequirePath(config.dataset, "dataset");
  if (config.k < 1) throw ConfigError("k must be >= 1");
  const Checkpoint ck = LoadCheckpoint(checkpoint_path);
  const model::ModelConfig mc = CheckpointModelConfig(ck);
  const data::Dataset ds = data::LoadDatasetDir(dataset_dir);
  const eval::ModelScorer scorer(mc, ck.params, ds.matrix);
  const eval::MetricsReport report = eval::Evaluate(scorer, ds.test_candidates, config.k);

  const std::filesystem::path out =
      config.out.empty() ? checkpoint_path.parent_path() : std::filesystem::path(config.out);
  if (!out.empty()) MakeDirs(out);
  data::WriteTextFile(out / "eval.json", eval::ToJson(report, ds.data_seed).dump(2) + "\n");
  if (config.write_ranks) eval::WriteRanksCsv(out / "ranks.csv", report);
  log << "hr@" << report.k << " " << Fixed(report.hr, 4) << "\n"
      << "ndcg@" << report.k << " " << Fixed(report.ndcg, 4) << "\n";
  return report;
}

std::vector<GradcheckOutcome> RunGradcheck(std::uint64_t seed, double eps,
                                           std::string_view variant, double threshold,
                                           std::ostream& log) {
  std::vector<model::AttentionKind> kinds;
  if (variant == "all") {
    kinds = {model::AttentionKind::kSoftmax, model::AttentionKind::kCorrelated};
  } else {
    kinds = {model::ParseAttention(variant)};
  }
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");

  constexpr std::int32_t kUsers = 3, kItems = 4;
  Rng rng = MakeRng(seed, Stream::kInit, 1);
  std::uniform_int_distribution<int> rating(0, 5);
  std::vector<data::Rating> entries;
  std::vector<data::Instance> batch;
  for (std::int32_t u = 0; u < kUsers; ++u) {
    for (std::int32_t i = 0; i < kItems; ++i) {
      const int r = rating(rng);
      if (r > 0) entries.push_back({u, i, static_cast<double>(r), 0});
      batch.push_back({u, i, r > 0 ? 1.0 : 0.0});
    }
  }
  const data::InteractionMatrix matrix(kUsers, kItems, entries);

  std::vector<GradcheckOutcome> outcomes;
  for (model::AttentionKind kind : kinds) {
    model::ModelConfig mc;
    mc.num_users = kUsers;
    mc.num_items = kItems;
    mc.num_stages = 2;
    mc.perspectives = 2;
    mc.input_dim = 3;
    mc.stage_dims = {3, 3};
    mc.attention = kind;
    mc.init_std = 0.5;
    mc.seed = seed;
    const model::ModelParams init = model::InitParams(mc);
    const numerics::Objective f = [&](const std::vector<numerics::Matrix>& tensors,
                                      numerics::GradientTable* grads) {
      const model::ModelParams p{init.names, tensors};
      return training::BatchLoss(mc, p, matrix, batch, 1e-6, grads);
    };
    GradcheckOutcome o;
    o.variant = std::string(model::AttentionName(kind));
    o.result = numerics::GradCheck(f, init.tensors, eps);
    o.worst_tensor = o.result.worst_tensor >= 0 ? init.names[o.result.worst_tensor] : "";
    o.passed = o.result.max_rel_error < threshold;
    log << o.variant << ": max relative error " << o.result.max_rel_error << " over "
        << o.result.entries_checked << " entries in " << init.tensors.size()
        << " tensors (worst " << o.worst_tensor << "), eps " << eps << ", threshold "
        << threshold << ": " << (o.passed ? "PASS" : "FAIL") << "\n";
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

}  // namespace mprec::cli
