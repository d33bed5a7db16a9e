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

#include "mprec/eval/evaluator.h"

#include <string>

#include "mprec/data/dataset_io.h"
#include "mprec/errors.h"
#include "mprec/eval/metrics.h"
#include "mprec/model/network.h"

namespace mprec::eval {

std::vector<std::vector<double>> Scorer::ScoreAll(
    std::span<const data::EvalCandidateSet> candidates) const {
  std::vector<std::vector<double>> out;
  out.reserve(candidates.size());
  for (const data::EvalCandidateSet& c : candidates) {
    out.push_back(Score(c.user, CandidateItems(c)));
  }
  return out;
}

ModelScorer::ModelScorer(const model::ModelConfig& config,
                         const model::ModelParams& params,
                         const data::InteractionMatrix& interactions)
    : config_(config), params_(params), interactions_(interactions) {
  if (config.num_users != interactions.rows() || config.num_items != interactions.cols()) {
    throw ConfigError("model expects " + ShapeString(config.num_users, config.num_items) +
                      " users x items but the dataset has " +
                      ShapeString(interactions.rows(), interactions.cols()));
  }
  model::CheckParams(config, params);
}

std::vector<double> ModelScorer::Score(std::int32_t user,
                                       std::span<const std::int32_t> items) const {
  return model::PredictScores(params_, config_, interactions_, user, items);
}

std::vector<std::vector<double>> ModelScorer::ScoreAll(
    std::span<const data::EvalCandidateSet> candidates) const {
  std::vector<model::Pair> pairs;
  std::vector<std::size_t> offsets = {0};
  for (const data::EvalCandidateSet& c : candidates) {
    pairs.push_back({c.user, c.positive});
    for (std::int32_t i : c.negatives) pairs.push_back({c.user, i});
    offsets.push_back(pairs.size());
  }
  const std::vector<double> flat = model::ScorePairs(params_, config_, interactions_, pairs);
  std::vector<std::vector<double>> out;
  out.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(offsets[k]),
                     flat.begin() + static_cast<std::ptrdiff_t>(offsets[k + 1]));
  }
  return out;
}

std::vector<std::int32_t> CandidateItems(const data::EvalCandidateSet& candidates) {
  std::vector<std::int32_t> items;
  items.reserve(candidates.negatives.size() + 1);
  items.push_back(candidates.positive);
  items.insert(items.end(), candidates.negatives.begin(), candidates.negatives.end());
  return items;
}

RankResult RankPositive(const Scorer& scorer, const data::EvalCandidateSet& candidates) {
  const std::vector<std::int32_t> items = CandidateItems(candidates);
  RankResult r;
  r.user = candidates.user;
  r.scores = scorer.Score(candidates.user, items);
  r.rank = RankOf(r.scores, items, 0);
  return r;
}

MetricsReport Evaluate(const Scorer& scorer,
                       std::span<const data::EvalCandidateSet> candidates, int k) {
  if (candidates.empty()) throw ContractViolation("evaluation needs at least one user");
  const std::vector<std::vector<double>> scores = scorer.ScoreAll(candidates);
  MetricsReport report;
  report.k = k;
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    report.users.push_back(candidates[u].user);
    report.ranks.push_back(RankOf(scores[u], CandidateItems(candidates[u]), 0));
  }
  report.hr = HrAtK(report.ranks, k);
  report.ndcg = NdcgAtK(report.ranks, k);
  return report;
}

nlohmann::json ToJson(const MetricsReport& report, std::uint64_t seed) {
  nlohmann::json j;
  j["k"] = report.k;
  j["hr"] = report.hr;
  j["ndcg"] = report.ndcg;
  j["num_users"] = report.ranks.size();
  j["seed"] = seed;
  return j;
}

void WriteRanksCsv(const std::filesystem::path& path, const MetricsReport& report) {
  std::string text = "user,rank\n";
  for (std::size_t k = 0; k < report.ranks.size(); ++k) {
    text += std::to_string(report.users[k]) + "," + std::to_string(report.ranks[k]) + "\n";
  }
  data::WriteTextFile(path, text);
}

}  // namespace mprec::eval
