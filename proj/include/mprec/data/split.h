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

#ifndef MPREC_DATA_SPLIT_H_
#define MPREC_DATA_SPLIT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mprec/data/ratings.h"

namespace mprec::data {

// Leave-one-out partition. `dev[u]` and `test[u]` are user u's held-out
// interactions; `train` holds the rest sorted by (user, item).
struct SplitSet {
  std::int32_t num_users = 0;
  std::int32_t num_items = 0;
  std::vector<Rating> train;
  std::vector<Rating> dev;
  std::vector<Rating> test;
};

// test = each user's latest interaction (ties -> larger item index);
// dev = one of the remaining interactions drawn uniformly with `seed`;
// train = the rest. Every user needs at least 3 interactions, otherwise
// DataError names the first offending user.
SplitSet SplitLeaveOneOut(const RatingTable& table, std::uint64_t seed);

// Per user, the sorted items of train ∪ dev ∪ test.
class PositiveIndex {
 public:
  explicit PositiveIndex(const SplitSet& split);

  std::span<const std::int32_t> Items(std::int32_t user) const;
  bool Contains(std::int32_t user, std::int32_t item) const;
  std::int32_t num_items() const { return num_items_; }

 private:
  std::int32_t num_items_;
  std::vector<std::vector<std::int32_t>> items_;
};

}  // namespace mprec::data

#endif  // MPREC_DATA_SPLIT_H_
