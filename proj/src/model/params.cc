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

#include "mprec/model/params.h"

#include <random>

#include "mprec/errors.h"
#include "mprec/random.h"

namespace mprec::model {
namespace {

constexpr const char* kStageTensorNames[kStageTensorCount] = {
    "W", "b_u", "M", "b_v", "A_u", "A_v"};

}  // namespace

ParamLayout::ParamLayout(const ModelConfig& c) : perspectives_(c.perspectives) {
  Validate(c);
  names_ = {"input.W", "input.b_u", "input.M", "input.b_v"};
  shapes_ = {{c.input_dim, c.num_items},
             {c.input_dim, 1},
             {c.input_dim, c.num_users},
             {c.input_dim, 1}};
  for (int s = 0; s < c.num_stages; ++s) {
    const Eigen::Index in = c.StageInputWidth(s);
    const Eigen::Index d = c.stage_dims[s];
    for (int p = 0; p < c.perspectives; ++p) {
      const std::string prefix =
          "stage" + std::to_string(s + 1) + ".p" + std::to_string(p + 1) + ".";
      for (int t = 0; t < kStageTensorCount; ++t) {
        names_.push_back(prefix + kStageTensorNames[t]);
      }
      shapes_.push_back({d, in});
      shapes_.push_back({d, 1});
      shapes_.push_back({d, in});
      shapes_.push_back({d, 1});
      shapes_.push_back({d, d});
      shapes_.push_back({d, d});
    }
  }
}

ParamId ParamLayout::Stage(int stage, int perspective, StageTensor tensor) const {
  return 4 + (stage * perspectives_ + perspective) * kStageTensorCount +
         static_cast<int>(tensor);
}

std::size_t ModelParams::Count() const {
  std::size_t n = 0;
  for (const Matrix& m : tensors) n += static_cast<std::size_t>(m.size());
  return n;
}

ModelParams InitParams(const ModelConfig& config) {
  const ParamLayout layout(config);
  Rng rng = MakeRng(config.seed, Stream::kInit);
  std::normal_distribution<double> gauss(0.0, config.init_std);
  ModelParams params;
  for (ParamId id = 0; id < static_cast<ParamId>(layout.size()); ++id) {
    params.names.push_back(layout.Name(id));
    Matrix m(layout.Rows(id), layout.Cols(id));
    double* data = m.data();
    for (Eigen::Index k = 0; k < m.size(); ++k) data[k] = gauss(rng);
    params.tensors.push_back(std::move(m));
  }
  return params;
}

void CheckParams(const ModelConfig& config, const ModelParams& params) {
  const ParamLayout layout(config);
  if (params.tensors.size() != layout.size() || params.names.size() != layout.size()) {
    throw DimensionError("model expects " + std::to_string(layout.size()) +
                         " tensors, got " + std::to_string(params.tensors.size()));
  }
  for (ParamId id = 0; id < static_cast<ParamId>(layout.size()); ++id) {
    const Matrix& m = params.tensors[id];
    if (params.names[id] != layout.Name(id) || m.rows() != layout.Rows(id) ||
        m.cols() != layout.Cols(id)) {
      throw DimensionError("tensor " + std::to_string(id) + ": expected " +
                           layout.Name(id) + " " +
                           ShapeString(layout.Rows(id), layout.Cols(id)) + ", got " +
                           params.names[id] + " " + numerics::ShapeOf(m));
    }
  }
}

}  // namespace mprec::model
