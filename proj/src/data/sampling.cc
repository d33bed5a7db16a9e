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

#include "mprec/data/sampling.h"

#include <algorithm>
#include <string>

#include "mprec/errors.h"

namespace mprec::data {

std::vector<std::int32_t> SampleExcluding(std::span<const std::int32_t> excluded,
                                          std::int32_t num_items, int count,
                                          Rng& rng) {
  const std::int64_t pool = static_cast<std::int64_t>(num_items) -
                            static_cast<std::int64_t>(excluded.size());
  if (count < 0 || pool < count) {
    throw DataError("need " + std::to_string(count) + " items but only " +
                    std::to_string(pool) + " are available");
  }
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(count));
  if (static_cast<std::int64_t>(count) * 4 >= pool) {
    // Dense case: partial Fisher-Yates over the explicit complement.
    std::vector<std::int32_t> candidates;
    candidates.reserve(static_cast<std::size_t>(pool));
    for (std::int32_t i = 0; i < num_items; ++i) {
      if (!std::binary_search(excluded.begin(), excluded.end(), i)) {
        candidates.push_back(i);
      }
    }
    for (int k = 0; k < count; ++k) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(k),
                                                      candidates.size() - 1);
      std::swap(candidates[static_cast<std::size_t>(k)], candidates[pick(rng)]);
      out.push_back(candidates[static_cast<std::size_t>(k)]);
    }
    return out;
  }
  std::uniform_int_distribution<std::int32_t> pick(0, num_items - 1);
  while (static_cast<int>(out.size()) < count) {
    const std::int32_t item = pick(rng);
    if (std::binary_search(excluded.begin(), excluded.end(), item)) continue;
    if (std::find(out.begin(), out.end(), item) != out.end()) continue;
    out.push_back(item);
  }
  return out;
}

std::vector<Instance> SampleTrainNegatives(const SplitSet& split,
                                           const PositiveIndex& positives,
                                           int ratio, std::uint64_t seed,
                                           std::int64_t epoch) {
  if (ratio < 1) {
    throw ConfigError("negative ratio must be >= 1, got " + std::to_string(ratio));
  }
  Rng rng = MakeRng(seed, Stream::kTrainNegatives, static_cast<std::uint64_t>(epoch));
  std::vector<Instance> out;
  out.reserve(split.train.size() * static_cast<std::size_t>(ratio));
  for (const Rating& r : split.train) {
    std::vector<std::int32_t> items;
    try {
      items = SampleExcluding(positives.Items(r.user), split.num_items, ratio, rng);
    } catch (const DataError& e) {
      throw DataError("negative sampling for user " + std::to_string(r.user) +
                      ": " + e.what());
    }
    for (std::int32_t item : items) out.push_back({r.user, item, 0.0});
  }
  return out;
}

std::vector<EvalCandidateSet> BuildEvalCandidates(const SplitSet& split,
                                                  const PositiveIndex& positives,
                                                  HoldOut which, std::uint64_t seed,
                                                  int num_negatives) {
  const std::vector<Rating>& held = which == HoldOut::kTest ? split.test : split.dev;
  Rng rng = MakeRng(seed, which == HoldOut::kTest ? Stream::kTestCandidates
                                                  : Stream::kDevCandidates);
  std::vector<EvalCandidateSet> out;
  out.reserve(held.size());
  for (const Rating& r : held) {
    EvalCandidateSet c;
    c.user = r.user;
    c.positive = r.item;
    try {
      c.negatives = SampleExcluding(positives.Items(r.user), split.num_items,
                                    num_negatives, rng);
    } catch (const DataError& e) {
      throw DataError("evaluation pool for user " + std::to_string(r.user) + ": " +
                      e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mprec::data
