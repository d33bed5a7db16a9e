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

// Prepared dataset directory:
//
//   interactions.bin       training interaction matrix (see interaction_matrix.h)
//   split.jsonl            {"user","item","rating","timestamp","split"} per rating
//   idmap.json             {"users": [...], "items": [...]} external ids by index
//   stats.json             counts, density, filter report, data seed
//   candidates_test.jsonl  {"user","positive","negatives"} per user
//   candidates_dev.jsonl   same, for the dev hold-out

#ifndef MPREC_DATA_DATASET_IO_H_
#define MPREC_DATA_DATASET_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"
#include "mprec/data/interaction_matrix.h"
#include "mprec/data/ratings.h"
#include "mprec/data/sampling.h"
#include "mprec/data/split.h"

namespace mprec::data {

struct Dataset {
  SplitSet split;
  InteractionMatrix matrix;
  std::vector<EvalCandidateSet> test_candidates;
  std::vector<EvalCandidateSet> dev_candidates;
  std::uint64_t data_seed = 0;
};

// Writes every artifact above; `stats` goes to stats.json verbatim and must
// carry a "seed" entry.
void WriteDatasetDir(const std::filesystem::path& dir, const Dataset& dataset,
                     const RatingTable& ids, const nlohmann::json& stats);

// Loads a directory written by WriteDatasetDir. Throws IoError / ParseError
// with the offending path, DataError on inconsistent artifacts.
Dataset LoadDatasetDir(const std::filesystem::path& dir);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace mprec::data

#endif  // MPREC_DATA_DATASET_IO_H_
