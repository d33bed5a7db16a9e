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

#ifndef MPREC_EVAL_METRICS_H_
#define MPREC_EVAL_METRICS_H_

#include <cstdint>
#include <span>

namespace mprec::eval {

// 1-based rank of candidate `positive` among `scores`. A candidate ranks
// ahead of the positive if its score is strictly greater, or equal with a
// lower item index. `items[k]` is the item scored by `scores[k]`.
int RankOf(std::span<const double> scores, std::span<const std::int32_t> items,
           std::size_t positive);

// Fraction of ranks <= k. Throws ContractViolation on empty input or k < 1.
double HrAtK(std::span<const int> ranks, int k);

// Mean of 1/log2(rank + 1) over ranks <= k (0 beyond k).
double NdcgAtK(std::span<const int> ranks, int k);

}  // namespace mprec::eval

#endif  // MPREC_EVAL_METRICS_H_
