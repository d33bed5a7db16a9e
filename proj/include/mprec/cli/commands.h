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

#ifndef MPREC_CLI_COMMANDS_H_
#define MPREC_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mprec/cli/run_config.h"
#include "mprec/eval/evaluator.h"
#include "mprec/numerics/grad_check.h"
#include "mprec/training/trainer.h"

namespace mprec::cli {

// parse -> filter -> split -> matrix -> eval candidates, written to
// config.out. Returns (and prints) the stats.json contents.
nlohmann::json RunPrepare(const RunConfig& config, std::ostream& log);

// Trains on config.dataset and writes run.json, epochs.jsonl, best.ckpt and
// last.ckpt into config.out. All config errors surface before training.
training::TrainResult RunTrain(const RunConfig& config, std::ostream& log);

// Ranks every test positive of config.dataset under `checkpoint`. Writes
// eval.json (and ranks.csv if config.write_ranks) into config.out, or next
// to the checkpoint when out is empty.
eval::MetricsReport RunEvaluate(const std::filesystem::path& checkpoint,
                                const RunConfig& config, std::ostream& log);

struct GradcheckOutcome {
  std::string variant;
  numerics::GradCheckResult result;
  std::string worst_tensor;
  bool passed = false;
};

// Finite-difference check of the batch loss on a 3-user, 4-item instance
// with S=2, P=2, d=3. `variant` is softmax, correlated or all.
std::vector<GradcheckOutcome> RunGradcheck(std::uint64_t seed, double eps,
                                           std::string_view variant, double threshold,
                                           std::ostream& log);

}  // namespace mprec::cli

#endif  // MPREC_CLI_COMMANDS_H_
