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

#ifndef MPREC_RANDOM_H_
#define MPREC_RANDOM_H_

#include <cstdint>
#include <random>

namespace mprec {

using Rng = std::mt19937_64;

// Named sub-streams, so that e.g. dev selection and candidate sampling
// drawn from the same seed stay independent.
enum class Stream : std::uint32_t {
  kDevSelection = 1,
  kTestCandidates = 2,
  kDevCandidates = 3,
  kInit = 4,
  kTrainNegatives = 5,
  kShuffle = 6,
};

inline Rng MakeRng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace mprec

#endif  // MPREC_RANDOM_H_
