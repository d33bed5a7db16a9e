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

// Command-line front end: prepare, train, evaluate, gradcheck.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mprec/cli/commands.h"
#include "mprec/cli/run_config.h"
#include "mprec/errors.h"

namespace {

using mprec::cli::RunConfig;

// Named flags that map one-to-one onto RunConfig keys.
struct FlagBinding {
  FlagBinding(const char* f, const char* k, const char* h) : flag(f), key(k), help(h) {}

  const char* flag;
  const char* key;
  const char* help;
  std::string value;
  CLI::Option* option = nullptr;
};

struct ConfigSource {
  std::string config_file;
  std::vector<std::string> sets;
  std::vector<FlagBinding> flags;

  void Attach(CLI::App* app) {
    app->add_option("--config", config_file, "key=value config file");
    app->add_option("--set", sets, "extra key=value override (repeatable)");
    for (FlagBinding& f : flags) f.option = app->add_option(f.flag, f.value, f.help);
  }

  // File values first, then named flags, then --set, last wins.
  RunConfig Resolve() const {
    RunConfig c;
    if (!config_file.empty()) {
      for (const auto& [k, v] : mprec::cli::ReadConfigFile(config_file)) c.Set(k, v);
    }
    for (const FlagBinding& f : flags) {
      if (f.option->count() > 0) c.Set(f.key, f.value);
    }
    for (const std::string& s : sets) {
      const auto [k, v] = mprec::cli::SplitAssignment(s);
      c.Set(k, v);
    }
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-stage multi-perspective recommender"};
  app.require_subcommand(1);

  CLI::App* prepare = app.add_subcommand("prepare", "Build a dataset directory from ratings");
  ConfigSource prepare_src;
  prepare_src.flags = {
      {"--input", "input", "ratings file"},
      {"--format", "format", "movielens-100k | movielens-1m | csv"},
      {"--min-user", "min_user", "minimum interactions per user"},
      {"--min-item", "min_item", "minimum interactions per item"},
      {"--seed", "data_seed", "split and candidate seed"},
      {"--out", "out", "output dataset directory"},
  };
  prepare_src.Attach(prepare);

  CLI::App* train = app.add_subcommand("train", "Train a model on a dataset directory");
  ConfigSource train_src;
  train_src.flags = {
      {"--dataset", "dataset", "dataset directory"},
      {"--out", "out", "output run directory"},
      {"--attention", "attention", "softmax | correlated"},
      {"--epochs", "epochs", "number of epochs"},
      {"--seed", "seed", "model and training seed"},
      {"--lr", "learning_rate", "Adam learning rate"},
      {"--batch-size", "batch_size", "examples per update"},
      {"--neg-ratio", "neg_ratio", "negatives per positive"},
  };
  train_src.Attach(train);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Rank test items under a checkpoint");
  ConfigSource eval_src;
  std::string checkpoint;
  evaluate->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  eval_src.flags = {
      {"--dataset", "dataset", "dataset directory"},
      {"--out", "out", "directory for eval.json (default: next to the checkpoint)"},
      {"--k", "k", "rank cutoff"},
      {"--ranks", "write_ranks", "also write ranks.csv (true/false)"},
  };
  eval_src.Attach(evaluate);

  CLI::App* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  std::uint64_t gc_seed = 0;
  double gc_eps = 1e-5;
  double gc_threshold = 1e-4;
  std::string gc_variant = "all";
  gradcheck->add_option("--seed", gc_seed, "instance seed");
  gradcheck->add_option("--eps", gc_eps, "central-difference step");
  gradcheck->add_option("--threshold", gc_threshold, "max relative error to pass");
  gradcheck->add_option("--variant", gc_variant, "softmax | correlated | all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prepare->parsed()) {
      mprec::cli::RunPrepare(prepare_src.Resolve(), std::cout);
    } else if (train->parsed()) {
      mprec::cli::RunTrain(train_src.Resolve(), std::cout);
    } else if (evaluate->parsed()) {
      mprec::cli::RunEvaluate(checkpoint, eval_src.Resolve(), std::cout);
    } else if (gradcheck->parsed()) {
      bool ok = true;
      for (const auto& o : mprec::cli::RunGradcheck(gc_seed, gc_eps, gc_variant,
                                                    gc_threshold, std::cout)) {
        ok = ok && o.passed;
      }
      if (!ok) {
        std::cerr << "error:gradcheck: relative error above threshold\n";
        return 1;
      }
    }
  } catch (const mprec::Error& e) {
    std::cerr << "error:" << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error:internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
