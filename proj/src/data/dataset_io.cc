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

#include "mprec/data/dataset_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>

#include "mprec/errors.h"

namespace mprec::data {
namespace {

using nlohmann::json;

constexpr const char* kSplitNames[] = {"train", "dev", "test"};

void WriteCandidates(const std::filesystem::path& path,
                     const std::vector<EvalCandidateSet>& candidates) {
  std::string text;
  for (const EvalCandidateSet& c : candidates) {
    json j;
    j["user"] = c.user;
    j["positive"] = c.positive;
    j["negatives"] = c.negatives;
    text += j.dump();
    text += '\n';
  }
  WriteTextFile(path, text);
}

template <typename Fn>
void ForEachJsonLine(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::vector<EvalCandidateSet> ReadCandidates(const std::filesystem::path& path) {
  std::vector<EvalCandidateSet> out;
  ForEachJsonLine(path, [&](const json& j) {
    EvalCandidateSet c;
    c.user = j.at("user").get<std::int32_t>();
    c.positive = j.at("positive").get<std::int32_t>();
    c.negatives = j.at("negatives").get<std::vector<std::int32_t>>();
    out.push_back(std::move(c));
  });
  return out;
}

}  // namespace

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void WriteDatasetDir(const std::filesystem::path& dir, const Dataset& dataset,
                     const RatingTable& ids, const nlohmann::json& stats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  WriteInteractionMatrix(dir / "interactions.bin", dataset.matrix);

  struct Tagged {
    Rating r;
    int split;
  };
  std::vector<Tagged> all;
  for (const Rating& r : dataset.split.train) all.push_back({r, 0});
  for (const Rating& r : dataset.split.dev) all.push_back({r, 1});
  for (const Rating& r : dataset.split.test) all.push_back({r, 2});
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
    return std::tie(a.r.user, a.r.item) < std::tie(b.r.user, b.r.item);
  });
  std::string text;
  for (const Tagged& t : all) {
    json j;
    j["user"] = t.r.user;
    j["item"] = t.r.item;
    j["rating"] = t.r.rating;
    j["timestamp"] = t.r.timestamp;
    j["split"] = kSplitNames[t.split];
    text += j.dump();
    text += '\n';
  }
  WriteTextFile(dir / "split.jsonl", text);

  json idmap;
  idmap["users"] = ids.user_ids;
  idmap["items"] = ids.item_ids;
  WriteTextFile(dir / "idmap.json", idmap.dump(1) + "\n");
  WriteTextFile(dir / "stats.json", stats.dump(2) + "\n");

  WriteCandidates(dir / "candidates_test.jsonl", dataset.test_candidates);
  WriteCandidates(dir / "candidates_dev.jsonl", dataset.dev_candidates);
}

Dataset LoadDatasetDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("dataset directory " + dir.string() + " does not exist");
  }
  Dataset ds;
  const json stats = ReadJsonFile(dir / "stats.json");
  try {
    ds.data_seed = stats.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError((dir / "stats.json").string() + ": " + e.what());
  }

  ds.matrix = ReadInteractionMatrix(dir / "interactions.bin");
  ds.split.num_users = ds.matrix.rows();
  ds.split.num_items = ds.matrix.cols();
  ds.split.dev.resize(static_cast<std::size_t>(ds.matrix.rows()));
  ds.split.test.resize(static_cast<std::size_t>(ds.matrix.rows()));
  std::vector<char> seen_dev(ds.split.dev.size(), 0), seen_test(ds.split.test.size(), 0);

  ForEachJsonLine(dir / "split.jsonl", [&](const json& j) {
    Rating r;
    r.user = j.at("user").get<std::int32_t>();
    r.item = j.at("item").get<std::int32_t>();
    r.rating = j.at("rating").get<double>();
    r.timestamp = j.at("timestamp").get<std::int64_t>();
    if (r.user < 0 || r.user >= ds.split.num_users || r.item < 0 ||
        r.item >= ds.split.num_items) {
      throw DataError((dir / "split.jsonl").string() + ": pair (" +
                      std::to_string(r.user) + ", " + std::to_string(r.item) +
                      ") outside interaction matrix " +
                      ShapeString(ds.split.num_users, ds.split.num_items));
    }
    const std::string tag = j.at("split").get<std::string>();
    if (tag == "train") {
      ds.split.train.push_back(r);
    } else if (tag == "dev") {
      ds.split.dev[r.user] = r;
      seen_dev[r.user] = 1;
    } else if (tag == "test") {
      ds.split.test[r.user] = r;
      seen_test[r.user] = 1;
    } else {
      throw DataError((dir / "split.jsonl").string() + ": unknown split '" + tag + "'");
    }
  });
  for (std::size_t u = 0; u < seen_dev.size(); ++u) {
    if (!seen_dev[u] || !seen_test[u]) {
      throw DataError((dir / "split.jsonl").string() + ": user " + std::to_string(u) +
                      " lacks a dev or test record");
    }
  }
  if (ds.split.train.size() != ds.matrix.nnz()) {
    throw DataError(dir.string() + ": split.jsonl has " +
                    std::to_string(ds.split.train.size()) +
                    " train records but interactions.bin has " +
                    std::to_string(ds.matrix.nnz()) + " nonzeros");
  }

  ds.test_candidates = ReadCandidates(dir / "candidates_test.jsonl");
  ds.dev_candidates = ReadCandidates(dir / "candidates_dev.jsonl");
  return ds;
}

}  // namespace mprec::data
