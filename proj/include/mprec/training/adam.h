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

#ifndef MPREC_TRAINING_ADAM_H_
#define MPREC_TRAINING_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mprec/numerics/matrix.h"

namespace mprec::training {

using numerics::Matrix;

struct AdamOptions {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::int64_t t = 0;

  // Zero moments shaped like `params`.
  static AdamState ZerosLike(std::span<const Matrix> params);
};

// One bias-corrected Adam update of `params` in place. Throws DimensionError
// if params, grads and state disagree in count or shape.
void AdamStep(std::span<Matrix> params, std::span<const Matrix> grads, AdamState& state,
              const AdamOptions& options);

}  // namespace mprec::training

#endif  // MPREC_TRAINING_ADAM_H_
