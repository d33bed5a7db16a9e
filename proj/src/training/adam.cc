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

#include "mprec/training/adam.h"

#include <cmath>
#include <string>

#include "mprec/errors.h"

namespace mprec::training {

AdamState AdamState::ZerosLike(std::span<const Matrix> params) {
  AdamState s;
  for (const Matrix& p : params) {
    s.m.push_back(Matrix::Zero(p.rows(), p.cols()));
    s.v.push_back(Matrix::Zero(p.rows(), p.cols()));
  }
  return s;
}

void AdamStep(std::span<Matrix> params, std::span<const Matrix> grads, AdamState& state,
              const AdamOptions& o) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw DimensionError("adam: " + std::to_string(params.size()) + " params, " +
                         std::to_string(grads.size()) + " grads, " +
                         std::to_string(state.m.size()) + " moments");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (grads[k].rows() != params[k].rows() || grads[k].cols() != params[k].cols() ||
        state.m[k].rows() != params[k].rows() || state.m[k].cols() != params[k].cols()) {
      throw DimensionError("adam: tensor " + std::to_string(k) + " is " +
                           numerics::ShapeOf(params[k]) + " but its gradient is " +
                           numerics::ShapeOf(grads[k]));
    }
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(o.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(o.beta2, static_cast<double>(state.t));
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto g = grads[k].array();
    auto m = state.m[k].array();
    auto v = state.v[k].array();
    m = o.beta1 * m + (1.0 - o.beta1) * g;
    v = o.beta2 * v + (1.0 - o.beta2) * g.square();
    params[k].array() -= o.learning_rate * (m / c1) / ((v / c2).sqrt() + o.eps);
  }
}

}  // namespace mprec::training
