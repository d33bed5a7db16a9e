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

#ifndef MPREC_DATA_SAMPLING_H_
#define MPREC_DATA_SAMPLING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mprec/data/split.h"
#include "mprec/random.h"

namespace mprec::data {

// A (user, item) training pair with its binarized target.
struct Instance {
  std::int32_t user = 0;
  std::int32_t item = 0;
  double target = 0.0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Draws `count` distinct items from [0, num_items) \ excluded (sorted),
// uniformly without replacement. Throws DataError if the pool is too small.
std::vector<std::int32_t> SampleExcluding(std::span<const std::int32_t> excluded,
                                          std::int32_t num_items, int count,
                                          Rng& rng);

// For each train positive in order, `ratio` negatives (target 0) drawn
// uniformly without replacement from items outside the user's
// train ∪ dev ∪ test. A pure function of (split, ratio, seed, epoch).
std::vector<Instance> SampleTrainNegatives(const SplitSet& split,
                                           const PositiveIndex& positives,
                                           int ratio, std::uint64_t seed,
                                           std::int64_t epoch);

// One held-out positive plus sampled negatives for ranking.
struct EvalCandidateSet {
  std::int32_t user = 0;
  std::int32_t positive = 0;
  std::vector<std::int32_t> negatives;

  friend bool operator==(const EvalCandidateSet&, const EvalCandidateSet&) = default;
};

enum class HoldOut { kTest, kDev };

// Per user: the held-out item and `num_negatives` items the user never
// interacted with, drawn with `seed`. Throws DataError naming the user when
// fewer are available.
std::vector<EvalCandidateSet> BuildEvalCandidates(const SplitSet& split,
                                                  const PositiveIndex& positives,
                                                  HoldOut which, std::uint64_t seed,
                                                  int num_negatives = 100);

}  // namespace mprec::data

#endif  // MPREC_DATA_SAMPLING_H_
