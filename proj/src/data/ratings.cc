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

#include "mprec/data/ratings.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "mprec/errors.h"

namespace mprec::data {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitFields(std::string_view line,
                                          std::string_view delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      return out;
    }
    out.push_back(Trim(line.substr(start, pos - start)));
    start = pos + delim.size();
  }
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Timestamps are integral, but some exports write them as "881250949.0".
bool ParseTimestamp(std::string_view s, std::int64_t& out) {
  if (ParseNumber(s, out)) return true;
  double d = 0.0;
  if (!ParseNumber(s, d) || d != static_cast<double>(static_cast<std::int64_t>(d))) {
    return false;
  }
  out = static_cast<std::int64_t>(d);
  return true;
}

std::string_view DefaultDelimiter(RatingFormat format) {
  switch (format) {
    case RatingFormat::kMovieLens100K:
      return "\t";
    case RatingFormat::kMovieLens1M:
      return "::";
    case RatingFormat::kCsv:
      return ",";
  }
  return ",";
}

// Sorted unique ids, numerically when every id is an integer.
std::vector<std::string> OrderedIds(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::int64_t> numeric(ids.size());
  bool all_numeric = true;
  for (std::size_t i = 0; i < ids.size() && all_numeric; ++i) {
    all_numeric = ParseNumber(std::string_view(ids[i]), numeric[i]);
  }
  if (all_numeric) {
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return numeric[a] < numeric[b];
    });
    std::vector<std::string> sorted;
    sorted.reserve(ids.size());
    for (std::size_t i : order) sorted.push_back(std::move(ids[i]));
    return sorted;
  }
  return ids;
}

}  // namespace

RatingFormat ParseRatingFormat(std::string_view name) {
  if (name == "movielens-100k") return RatingFormat::kMovieLens100K;
  if (name == "movielens-1m") return RatingFormat::kMovieLens1M;
  if (name == "csv") return RatingFormat::kCsv;
  throw ConfigError("unknown rating format '" + std::string(name) +
                    "' (expected movielens-100k, movielens-1m or csv)");
}

std::string_view FormatName(RatingFormat format) {
  switch (format) {
    case RatingFormat::kMovieLens100K:
      return "movielens-100k";
    case RatingFormat::kMovieLens1M:
      return "movielens-1m";
    case RatingFormat::kCsv:
      return "csv";
  }
  return "csv";
}

RatingTable BuildRatingTable(std::vector<RawRating> raw,
                             std::size_t* duplicates) {
  RatingTable table;
  {
    std::vector<std::string> users, items;
    users.reserve(raw.size());
    items.reserve(raw.size());
    for (const RawRating& r : raw) {
      users.push_back(r.user);
      items.push_back(r.item);
    }
    table.user_ids = OrderedIds(std::move(users));
    table.item_ids = OrderedIds(std::move(items));
  }
  std::unordered_map<std::string, std::int32_t> user_index, item_index;
  for (std::size_t i = 0; i < table.user_ids.size(); ++i) {
    user_index.emplace(table.user_ids[i], static_cast<std::int32_t>(i));
  }
  for (std::size_t i = 0; i < table.item_ids.size(); ++i) {
    item_index.emplace(table.item_ids[i], static_cast<std::int32_t>(i));
  }
  table.num_users = static_cast<std::int32_t>(table.user_ids.size());
  table.num_items = static_cast<std::int32_t>(table.item_ids.size());

  struct Keyed {
    Rating rating;
    std::size_t line;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    keyed.push_back({{user_index.at(raw[i].user), item_index.at(raw[i].item),
                      raw[i].rating, raw[i].timestamp},
                     i});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.rating.user, a.rating.item, a.rating.timestamp, a.line) <
           std::tie(b.rating.user, b.rating.item, b.rating.timestamp, b.line);
  });
  std::size_t dropped = 0;
  table.records.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    const bool superseded = i + 1 < keyed.size() &&
                            keyed[i + 1].rating.user == keyed[i].rating.user &&
                            keyed[i + 1].rating.item == keyed[i].rating.item;
    if (superseded) {
      ++dropped;
    } else {
      table.records.push_back(keyed[i].rating);
    }
  }
  if (duplicates != nullptr) *duplicates = dropped;
  return table;
}

ParseReport ParseRatingsText(std::string_view text, const ParseOptions& options) {
  const std::string delim =
      options.delimiter ? *options.delimiter
                        : std::string(DefaultDelimiter(options.format));
  if (delim.empty()) throw ConfigError("rating delimiter must not be empty");

  ParseReport report;
  std::vector<RawRating> raw;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    ++report.lines;

    const auto fields = SplitFields(line, delim);
    RawRating r;
    bool ok = fields.size() == 4 && !fields[0].empty() && !fields[1].empty();
    if (ok) {
      ok = ParseNumber(fields[2], r.rating) && ParseTimestamp(fields[3], r.timestamp);
    }
    if (!ok) {
      if (options.format == RatingFormat::kCsv && report.lines == 1 &&
          fields.size() == 4) {
        report.header_skipped = true;
        continue;
      }
      if (options.strict) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed rating record '" + std::string(line) + "'");
      }
      ++report.malformed_lines;
      if (report.malformed_line_numbers.size() < 20) {
        report.malformed_line_numbers.push_back(line_no);
      }
      continue;
    }
    r.user = std::string(fields[0]);
    r.item = std::string(fields[1]);
    raw.push_back(std::move(r));
  }
  report.table = BuildRatingTable(std::move(raw), &report.duplicates);
  return report;
}

ParseReport ParseRatings(const std::filesystem::path& path,
                         const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ratings file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading ratings file " + path.string());
  try {
    return ParseRatingsText(buffer.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

FilterReport FilterDensity(const RatingTable& table, int min_user, int min_item) {
  if (min_user < 1 || min_item < 1) {
    throw ConfigError("density thresholds must be >= 1 (got min_user=" +
                      std::to_string(min_user) +
                      ", min_item=" + std::to_string(min_item) + ")");
  }
  std::vector<int> item_count(table.num_items, 0);
  for (const Rating& r : table.records) ++item_count[r.item];
  std::vector<Rating> kept;
  for (const Rating& r : table.records) {
    if (item_count[r.item] >= min_item) kept.push_back(r);
  }

  std::vector<int> user_count(table.num_users, 0);
  for (const Rating& r : kept) ++user_count[r.user];
  std::vector<Rating> final_records;
  for (const Rating& r : kept) {
    if (user_count[r.user] >= min_user) final_records.push_back(r);
  }
  if (final_records.empty()) {
    throw DataError("density filter (min_user=" + std::to_string(min_user) +
                    ", min_item=" + std::to_string(min_item) +
                    ") removed every record");
  }

  std::vector<std::int32_t> user_map(table.num_users, -1);
  std::vector<std::int32_t> item_map(table.num_items, -1);
  for (const Rating& r : final_records) {
    user_map[r.user] = 0;
    item_map[r.item] = 0;
  }
  FilterReport report;
  RatingTable& out = report.table;
  for (std::int32_t u = 0; u < table.num_users; ++u) {
    if (user_map[u] < 0) continue;
    user_map[u] = out.num_users++;
    out.user_ids.push_back(table.user_ids[u]);
  }
  for (std::int32_t i = 0; i < table.num_items; ++i) {
    if (item_map[i] < 0) continue;
    item_map[i] = out.num_items++;
    out.item_ids.push_back(table.item_ids[i]);
  }
  out.records.reserve(final_records.size());
  std::vector<int> residual(out.num_items, 0);
  for (const Rating& r : final_records) {
    out.records.push_back({user_map[r.user], item_map[r.item], r.rating, r.timestamp});
    ++residual[item_map[r.item]];
  }
  report.removed_items = static_cast<std::size_t>(table.num_items - out.num_items);
  report.removed_users = static_cast<std::size_t>(table.num_users - out.num_users);
  report.removed_records = table.records.size() - out.records.size();
  report.residual_sparse_items = static_cast<std::size_t>(std::count_if(
      residual.begin(), residual.end(), [&](int c) { return c < min_item; }));
  return report;
}

}  // namespace mprec::data
