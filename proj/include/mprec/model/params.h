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

#ifndef MPREC_MODEL_PARAMS_H_
#define MPREC_MODEL_PARAMS_H_

#include <string>
#include <vector>

#include "mprec/model/config.h"
#include "mprec/numerics/matrix.h"
#include "mprec/numerics/tape.h"

namespace mprec::model {

using numerics::Matrix;
using numerics::ParamId;

// Per-perspective tensors, in storage order.
enum class StageTensor : int {
  kUserWeight = 0,  // W_{s,p}  [d_s x in_s]
  kUserBias,        // b_{u,s,p} [d_s x 1]
  kItemWeight,      // M_{s,p}  [d_s x in_s]
  kItemBias,        // b_{v,s,p} [d_s x 1]
  kUserAttention,   // A_{u,s,p} [d_s x d_s]
  kItemAttention,   // A_{v,s,p} [d_s x d_s]
};
inline constexpr int kStageTensorCount = 6;

// Maps every tensor of a config to a dense ParamId and a stable name. Input
// tensors come first (W, b_u, M, b_v), then stages and perspectives in
// order.
class ParamLayout {
 public:
  explicit ParamLayout(const ModelConfig& config);

  static constexpr ParamId kInputUserWeight = 0;  // W   [d0 x num_items]
  static constexpr ParamId kInputUserBias = 1;    // b_u [d0 x 1]
  static constexpr ParamId kInputItemWeight = 2;  // M   [d0 x num_users]
  static constexpr ParamId kInputItemBias = 3;    // b_v [d0 x 1]

  ParamId Stage(int stage, int perspective, StageTensor tensor) const;

  std::size_t size() const { return names_.size(); }
  const std::string& Name(ParamId id) const { return names_.at(id); }
  Eigen::Index Rows(ParamId id) const { return shapes_.at(id).first; }
  Eigen::Index Cols(ParamId id) const { return shapes_.at(id).second; }

 private:
  int perspectives_;
  std::vector<std::string> names_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> shapes_;
};

struct ModelParams {
  std::vector<std::string> names;
  std::vector<Matrix> tensors;

  std::size_t Count() const;  // total scalar entries
};

// Every entry i.i.d. N(0, init_std²) from the config seed.
ModelParams InitParams(const ModelConfig& config);

// Throws DimensionError if names or shapes disagree with the config.
void CheckParams(const ModelConfig& config, const ModelParams& params);

}  // namespace mprec::model

#endif  // MPREC_MODEL_PARAMS_H_
