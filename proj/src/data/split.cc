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

#include "mprec/data/split.h"

#include <algorithm>
#include <string>

#include "mprec/errors.h"
#include "mprec/random.h"

namespace mprec::data {

SplitSet SplitLeaveOneOut(const RatingTable& table, std::uint64_t seed) {
  SplitSet split;
  split.num_users = table.num_users;
  split.num_items = table.num_items;

  std::vector<std::vector<Rating>> by_user(table.num_users);
  for (const Rating& r : table.records) by_user[r.user].push_back(r);

  Rng rng = MakeRng(seed, Stream::kDevSelection);
  split.dev.reserve(table.num_users);
  split.test.reserve(table.num_users);
  for (std::int32_t u = 0; u < table.num_users; ++u) {
    std::vector<Rating>& rs = by_user[u];
    if (rs.size() < 3) {
      const std::string ext =
          u < static_cast<std::int32_t>(table.user_ids.size()) ? table.user_ids[u] : "?";
      throw DataError("user " + ext + " (index " + std::to_string(u) + ") has " +
                      std::to_string(rs.size()) +
                      " interactions; leave-one-out needs at least 3");
    }
    // Records are sorted by item, so the last maximum has the larger index.
    std::size_t latest = 0;
    for (std::size_t k = 1; k < rs.size(); ++k) {
      if (rs[k].timestamp >= rs[latest].timestamp) latest = k;
    }
    split.test.push_back(rs[latest]);
    rs.erase(rs.begin() + static_cast<std::ptrdiff_t>(latest));

    std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
    const std::size_t dev = pick(rng);
    split.dev.push_back(rs[dev]);
    rs.erase(rs.begin() + static_cast<std::ptrdiff_t>(dev));

    split.train.insert(split.train.end(), rs.begin(), rs.end());
  }
  return split;
}

PositiveIndex::PositiveIndex(const SplitSet& split)
    : num_items_(split.num_items), items_(split.num_users) {
  for (const Rating& r : split.train) items_[r.user].push_back(r.item);
  for (const Rating& r : split.dev) items_[r.user].push_back(r.item);
  for (const Rating& r : split.test) items_[r.user].push_back(r.item);
  for (auto& v : items_) std::sort(v.begin(), v.end());
}

std::span<const std::int32_t> PositiveIndex::Items(std::int32_t user) const {
  return items_.at(static_cast<std::size_t>(user));
}

bool PositiveIndex::Contains(std::int32_t user, std::int32_t item) const {
  const auto& v = items_.at(static_cast<std::size_t>(user));
  return std::binary_search(v.begin(), v.end(), item);
}

}  // namespace mprec::data
