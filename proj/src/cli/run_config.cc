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

#include "mprec/cli/run_config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include "mprec/errors.h"

namespace mprec::cli {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Bad(std::string_view key, std::string_view value, const char* want) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                    " (expected " + want + ")");
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value, const char* want) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) Bad(key, value, want);
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  Bad(key, value, "true or false");
}

std::vector<int> ParseIntList(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(ParseNumber<int>(key, Trim(value.substr(0, comma)), "comma-separated integers"));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  if (out.empty()) Bad(key, value, "comma-separated integers");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* table = [] {
    auto* t = new std::map<std::string, Setter, std::less<>>;
    auto& m = *t;
    m["input"] = [](RunConfig& c, auto, auto v) { c.input = v; };
    m["dataset"] = [](RunConfig& c, auto, auto v) { c.dataset = v; };
    m["out"] = [](RunConfig& c, auto, auto v) { c.out = v; };
    m["format"] = [](RunConfig& c, auto, auto v) { c.format = data::ParseRatingFormat(v); };
    m["min_user"] = [](RunConfig& c, auto k, auto v) { c.min_user = ParseNumber<int>(k, v, "an integer"); };
    m["min_item"] = [](RunConfig& c, auto k, auto v) { c.min_item = ParseNumber<int>(k, v, "an integer"); };
    m["data_seed"] = [](RunConfig& c, auto k, auto v) { c.data_seed = ParseNumber<std::uint64_t>(k, v, "an unsigned integer"); };
    m["stages"] = [](RunConfig& c, auto k, auto v) { c.stages = ParseNumber<int>(k, v, "an integer"); };
    m["perspectives"] = [](RunConfig& c, auto k, auto v) { c.perspectives = ParseNumber<int>(k, v, "an integer"); };
    m["input_dim"] = [](RunConfig& c, auto k, auto v) { c.input_dim = ParseNumber<int>(k, v, "an integer"); };
    m["stage_dims"] = [](RunConfig& c, auto k, auto v) { c.stage_dims = ParseIntList(k, v); };
    m["attention"] = [](RunConfig& c, auto, auto v) { c.attention = model::ParseAttention(v); };
    m["init_std"] = [](RunConfig& c, auto k, auto v) { c.init_std = ParseNumber<double>(k, v, "a number"); };
    m["seed"] = [](RunConfig& c, auto k, auto v) { c.seed = ParseNumber<std::uint64_t>(k, v, "an unsigned integer"); };
    m["batch_size"] = [](RunConfig& c, auto k, auto v) { c.batch_size = ParseNumber<int>(k, v, "an integer"); };
    m["neg_ratio"] = [](RunConfig& c, auto k, auto v) { c.neg_ratio = ParseNumber<int>(k, v, "an integer"); };
    m["learning_rate"] = [](RunConfig& c, auto k, auto v) { c.learning_rate = ParseNumber<double>(k, v, "a number"); };
    m["epochs"] = [](RunConfig& c, auto k, auto v) { c.epochs = ParseNumber<int>(k, v, "an integer"); };
    m["beta1"] = [](RunConfig& c, auto k, auto v) { c.beta1 = ParseNumber<double>(k, v, "a number"); };
    m["beta2"] = [](RunConfig& c, auto k, auto v) { c.beta2 = ParseNumber<double>(k, v, "a number"); };
    m["adam_eps"] = [](RunConfig& c, auto k, auto v) { c.adam_eps = ParseNumber<double>(k, v, "a number"); };
    m["clamp_eps"] = [](RunConfig& c, auto k, auto v) { c.clamp_eps = ParseNumber<double>(k, v, "a number"); };
    m["eval_every"] = [](RunConfig& c, auto k, auto v) { c.eval_every = ParseNumber<int>(k, v, "an integer"); };
    m["log_wall_time"] = [](RunConfig& c, auto k, auto v) { c.log_wall_time = ParseBool(k, v); };
    m["k"] = [](RunConfig& c, auto k, auto v) { c.k = ParseNumber<int>(k, v, "an integer"); };
    m["write_ranks"] = [](RunConfig& c, auto k, auto v) { c.write_ranks = ParseBool(k, v); };
    return t;
  }();
  return *table;
}

}  // namespace

void RunConfig::Set(std::string_view key, std::string_view value) {
  const auto it = Setters().find(key);
  if (it == Setters().end()) {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
  it->second(*this, key, value);
}

int RunConfig::EffectiveMinUser() const {
  if (min_user) return *min_user;
  return format == data::RatingFormat::kCsv ? 20 : 1;
}

int RunConfig::EffectiveMinItem() const {
  if (min_item) return *min_item;
  return format == data::RatingFormat::kCsv ? 5 : 1;
}

model::ModelConfig RunConfig::ToModelConfig(std::int32_t num_users,
                                            std::int32_t num_items) const {
  model::ModelConfig c;
  c.num_users = num_users;
  c.num_items = num_items;
  c.num_stages = stages;
  c.perspectives = perspectives;
  c.input_dim = input_dim;
  c.stage_dims = stage_dims;
  c.attention = attention;
  c.init_std = init_std;
  c.seed = seed;
  model::Validate(c);
  return c;
}

training::TrainConfig RunConfig::ToTrainConfig() const {
  training::TrainConfig c;
  c.batch_size = batch_size;
  c.neg_ratio = neg_ratio;
  c.learning_rate = learning_rate;
  c.epochs = epochs;
  c.beta1 = beta1;
  c.beta2 = beta2;
  c.adam_eps = adam_eps;
  c.clamp_eps = clamp_eps;
  c.seed = seed;
  c.eval_every = eval_every;
  training::Validate(c);
  return c;
}

nlohmann::json RunConfig::ToJson(bool with_paths) const {
  nlohmann::json j;
  if (with_paths) {
    j["input"] = input;
    j["dataset"] = dataset;
    j["out"] = out;
  }
  j["format"] = std::string(data::FormatName(format));
  j["min_user"] = EffectiveMinUser();
  j["min_item"] = EffectiveMinItem();
  j["data_seed"] = data_seed;
  j["stages"] = stages;
  j["perspectives"] = perspectives;
  j["input_dim"] = input_dim;
  j["stage_dims"] = stage_dims;
  j["attention"] = std::string(model::AttentionName(attention));
  j["init_std"] = init_std;
  j["seed"] = seed;
  j["batch_size"] = batch_size;
  j["neg_ratio"] = neg_ratio;
  j["learning_rate"] = learning_rate;
  j["epochs"] = epochs;
  j["beta1"] = beta1;
  j["beta2"] = beta2;
  j["adam_eps"] = adam_eps;
  j["clamp_eps"] = clamp_eps;
  j["eval_every"] = eval_every;
  j["log_wall_time"] = log_wall_time;
  j["k"] = k;
  j["write_ranks"] = write_ranks;
  return j;
}

std::vector<std::string> RunConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [k, unused] : Setters()) keys.push_back(k);
  return keys;
}

std::pair<std::string, std::string> SplitAssignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(text) + "'");
  }
  return {std::string(Trim(text.substr(0, eq))), std::string(Trim(text.substr(eq + 1)))};
}

std::vector<std::pair<std::string, std::string>> ReadConfigFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = Trim(body);
    if (body.empty()) continue;
    try {
      auto kv = SplitAssignment(body);
      if (!Setters().contains(kv.first)) {
        throw ConfigError("unknown config key '" + kv.first + "'");
      }
      out.push_back(std::move(kv));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace mprec::cli
