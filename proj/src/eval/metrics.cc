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

#include "mprec/eval/metrics.h"

#include <cmath>
#include <string>

#include "mprec/errors.h"

namespace mprec::eval {
namespace {

void CheckRanks(std::span<const int> ranks, int k) {
  if (ranks.empty()) throw ContractViolation("metrics need at least one rank");
  if (k < 1) throw ContractViolation("k must be >= 1, got " + std::to_string(k));
}

}  // namespace

int RankOf(std::span<const double> scores, std::span<const std::int32_t> items,
           std::size_t positive) {
  if (scores.size() != items.size() || positive >= scores.size()) {
    throw DimensionError("rank: " + std::to_string(scores.size()) + " scores, " +
                         std::to_string(items.size()) + " items, positive at " +
                         std::to_string(positive));
  }
  const double s = scores[positive];
  const std::int32_t item = items[positive];
  int rank = 1;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (k == positive) continue;
    if (scores[k] > s || (scores[k] == s && items[k] < item)) ++rank;
  }
  return rank;
}

double HrAtK(std::span<const int> ranks, int k) {
  CheckRanks(ranks, k);
  std::size_t hits = 0;
  for (int r : ranks) hits += r <= k ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double NdcgAtK(std::span<const int> ranks, int k) {
  CheckRanks(ranks, k);
  double sum = 0.0;
  for (int r : ranks) {
    if (r <= k) sum += 1.0 / std::log2(static_cast<double>(r) + 1.0);
  }
  return sum / static_cast<double>(ranks.size());
}

}  // namespace mprec::eval
