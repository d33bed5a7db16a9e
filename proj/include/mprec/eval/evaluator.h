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

#ifndef MPREC_EVAL_EVALUATOR_H_
#define MPREC_EVAL_EVALUATOR_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "json.hpp"
#include "mprec/data/interaction_matrix.h"
#include "mprec/data/sampling.h"
#include "mprec/model/config.h"
#include "mprec/model/params.h"

namespace mprec::eval {

// Scores candidate lists. Candidate order is the positive first, then the
// negatives as stored.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::vector<double> Score(std::int32_t user,
                                    std::span<const std::int32_t> items) const = 0;
  // One score vector per candidate set; override to batch across users.
  virtual std::vector<std::vector<double>> ScoreAll(
      std::span<const data::EvalCandidateSet> candidates) const;
};

class ModelScorer : public Scorer {
 public:
  // Throws ConfigError if the model and matrix shapes disagree.
  ModelScorer(const model::ModelConfig& config, const model::ModelParams& params,
              const data::InteractionMatrix& interactions);

  std::vector<double> Score(std::int32_t user,
                            std::span<const std::int32_t> items) const override;
  std::vector<std::vector<double>> ScoreAll(
      std::span<const data::EvalCandidateSet> candidates) const override;

 private:
  const model::ModelConfig& config_;
  const model::ModelParams& params_;
  const data::InteractionMatrix& interactions_;
};

std::vector<std::int32_t> CandidateItems(const data::EvalCandidateSet& candidates);

struct RankResult {
  std::int32_t user = 0;
  int rank = 0;
  std::vector<double> scores;  // aligned with CandidateItems
};

RankResult RankPositive(const Scorer& scorer, const data::EvalCandidateSet& candidates);

struct MetricsReport {
  int k = 10;
  double hr = 0.0;
  double ndcg = 0.0;
  std::vector<std::int32_t> users;
  std::vector<int> ranks;
};

MetricsReport Evaluate(const Scorer& scorer,
                       std::span<const data::EvalCandidateSet> candidates, int k = 10);

// {k, hr, ndcg, num_users, seed}
nlohmann::json ToJson(const MetricsReport& report, std::uint64_t seed);
// "user,rank" header then one line per user.
void WriteRanksCsv(const std::filesystem::path& path, const MetricsReport& report);

}  // namespace mprec::eval

#endif  // MPREC_EVAL_EVALUATOR_H_
