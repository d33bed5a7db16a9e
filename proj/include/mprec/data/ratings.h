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

#ifndef MPREC_DATA_RATINGS_H_
#define MPREC_DATA_RATINGS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mprec::data {

enum class RatingFormat { kMovieLens100K, kMovieLens1M, kCsv };

// "movielens-100k", "movielens-1m", "csv"
RatingFormat ParseRatingFormat(std::string_view name);
std::string_view FormatName(RatingFormat format);

struct Rating {
  std::int32_t user = 0;
  std::int32_t item = 0;
  double rating = 0.0;
  std::int64_t timestamp = 0;

  friend bool operator==(const Rating&, const Rating&) = default;
};

// Ratings with dense, contiguous user and item indices. Records are unique
// per (user, item) and sorted by (user, item). Dense indices follow the
// order of the external ids (numeric when every id is an integer,
// lexicographic otherwise).
struct RatingTable {
  std::vector<Rating> records;
  std::int32_t num_users = 0;
  std::int32_t num_items = 0;
  std::vector<std::string> user_ids;  // dense -> external
  std::vector<std::string> item_ids;
};

struct RawRating {
  std::string user;
  std::string item;
  double rating = 0.0;
  std::int64_t timestamp = 0;
};

// Densifies ids. Duplicate (user, item) pairs keep the record with the
// latest timestamp (the later line on a tie); `duplicates` receives the
// number of records dropped.
RatingTable BuildRatingTable(std::vector<RawRating> raw,
                             std::size_t* duplicates = nullptr);

struct ParseOptions {
  RatingFormat format = RatingFormat::kCsv;
  std::optional<std::string> delimiter;  // overrides the format default
  bool strict = false;                   // malformed line -> ParseError
};

struct ParseReport {
  RatingTable table;
  std::size_t lines = 0;  // non-blank lines read, header included
  std::size_t malformed_lines = 0;
  std::vector<std::size_t> malformed_line_numbers;  // 1-based, first 20
  std::size_t duplicates = 0;
  bool header_skipped = false;
};

// Line format is `user<d>item<d>rating<d>timestamp` with d = TAB for
// MovieLens 100K, "::" for MovieLens 1M and "," for CSV. CSV files may
// start with a header line. Malformed lines are skipped and counted unless
// `strict`, in which case the first one raises ParseError with its line
// number.
ParseReport ParseRatings(const std::filesystem::path& path,
                         const ParseOptions& options);
ParseReport ParseRatingsText(std::string_view text, const ParseOptions& options);

struct FilterReport {
  RatingTable table;
  std::size_t removed_items = 0;
  std::size_t removed_users = 0;
  std::size_t removed_records = 0;
  // Items left with fewer than min_item interactions after the user pass.
  std::size_t residual_sparse_items = 0;
};

// One pass dropping items with < min_item interactions, then one pass
// dropping users with < min_user interactions, then re-densifies. Throws
// DataError if nothing survives.
FilterReport FilterDensity(const RatingTable& table, int min_user = 20,
                           int min_item = 5);

}  // namespace mprec::data

#endif  // MPREC_DATA_RATINGS_H_
